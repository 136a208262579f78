//
// Copyright 2026 The floatbody Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "floatbody/quantile.h"

#include <algorithm>
#include <cmath>

#include "floatbody/distribution.h"
#include "floatbody/geometry.h"
#include "floatbody/rng.h"
#include "floatbody/status.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/oracles.h"

namespace floatbody {
namespace {

using ::testing::ElementsAre;

std::vector<double> OneToTen() {
  std::vector<double> v;
  for (int i = 1; i <= 10; ++i) v.push_back(i);
  return v;
}

Sample Rows(const std::vector<Point>& rows) { return *Sample::FromRows(rows); }

TEST(EmpiricalQuantileTest, OrderStatistics) {
  auto v = OneToTen();
  EXPECT_EQ(*EmpiricalQuantile(v, 0.5), 5.0);
  v = OneToTen();
  EXPECT_EQ(*EmpiricalQuantile(v, 0.9), 9.0);
  v = OneToTen();
  EXPECT_EQ(*EmpiricalQuantile(v, 0.91), 10.0);
}

TEST(EmpiricalQuantileTest, MatchesBruteForceThresholds) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformInt(0, 30));
    std::vector<double> v(n);
    // Coarse values force ties.
    for (double& x : v) x = std::round(rng.Normal() * 3.0) / 2.0;
    const double q = 0.01 + 0.98 * rng.Uniform();
    std::vector<double> copy = v;
    EXPECT_EQ(*EmpiricalQuantile(copy, q), oracle::BruteQuantile(v, q));
  }
}

TEST(EmpiricalQuantileTest, TranslationAndMonotonicity) {
  Rng rng(5);
  std::vector<double> v(50);
  for (double& x : v) x = rng.Normal();
  double prev = -INFINITY;
  for (double q = 0.02; q < 1.0; q += 0.02) {
    std::vector<double> a = v;
    std::vector<double> b = v;
    for (double& x : b) x += 2.5;
    const double qa = *EmpiricalQuantile(a, q);
    EXPECT_DOUBLE_EQ(*EmpiricalQuantile(b, q), qa + 2.5);
    EXPECT_GE(qa, prev);
    prev = qa;
  }
}

TEST(EmpiricalQuantileTest, Errors) {
  std::vector<double> empty;
  EXPECT_EQ(ErrorKindOf(EmpiricalQuantile(empty, 0.5).status()),
            ErrorKind::kInvalidQuantile);
  auto v = OneToTen();
  EXPECT_EQ(ErrorKindOf(EmpiricalQuantile(v, 1.0).status()),
            ErrorKind::kInvalidQuantile);
  EXPECT_EQ(ErrorKindOf(EmpiricalQuantile(v, 0.0).status()),
            ErrorKind::kInvalidQuantile);
}

TEST(QuantileAlongTest, Examples) {
  Sample x = Rows({{0, 9}, {1, 9}, {2, 9}});
  EXPECT_EQ(*QuantileAlong(x, {1, 0}, 0.5), 1.0);
  EXPECT_EQ(*QuantileAlong(x, {0, 1}, 0.5), 9.0);
  EXPECT_EQ(ErrorKindOf(QuantileAlong(x, {1, 0, 0}, 0.5).status()),
            ErrorKind::kDimensionMismatch);
}

TEST(QuantileAlongTest, NegatedDirectionSignConvention) {
  Sample x = Rows({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  // Projections on -e1 are {0,-1,-2,-3}; the 3rd order statistic is -1.
  EXPECT_EQ(*QuantileAlong(x, {-1, 0}, 0.75), -1.0);
  // Not the negation of the +e1 quantile (which is 2).
  EXPECT_EQ(*QuantileAlong(x, {1, 0}, 0.75), 2.0);
}

TEST(DeltaQTest, Examples) {
  auto axes = DirectionNet::Create(2, {{1, 0}, {0, 1}});
  Rng rng(9);
  std::vector<Point> rows;
  for (int i = 0; i < 20; ++i) rows.push_back(rng.Gaussian(2));
  Sample x = Rows(rows);
  EXPECT_EQ(*DeltaQ(x, x, 0.75, *axes), 0.0);
  for (Point& p : rows) p[0] += 0.3;
  EXPECT_NEAR(*DeltaQ(x, Rows(rows), 0.75, *axes), 0.3, 1e-12);

  auto plus = DirectionNet::Create(1, {{1.0}});
  EXPECT_EQ(*DeltaQ(Rows({{0}, {1}, {2}}), Rows({{0}, {1}, {5}}), 0.9, *plus),
            3.0);
  EXPECT_EQ(ErrorKindOf(DeltaQ(x, Rows({{0}}), 0.5, *axes).status()),
            ErrorKind::kDimensionMismatch);
}

TEST(QueryQuantilesTest, PointMassAndOneDimensional) {
  auto axes = AxisNet(3);
  Sample c = Rows({{2, 2, 2}, {2, 2, 2}, {2, 2, 2}});
  auto v = QueryQuantiles(c, 0.75, *axes);
  ASSERT_TRUE(v.ok());
  EXPECT_THAT(*v, ElementsAre(2, -2, 2, -2, 2, -2));
  auto plus = DirectionNet::Create(1, {{1.0}});
  auto a = QueryQuantiles(Rows({{0}, {1}, {2}}), 0.9, *plus);
  auto b = QueryQuantiles(Rows({{0}, {1}, {5}}), 0.9, *plus);
  EXPECT_EQ((*b)[0] - (*a)[0], 3.0);
}

TEST(QueryQuantilesTest, SupNormEqualsDeltaQ) {
  Rng rng(11);
  auto net = RandomSphereNet(3, 40, rng);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> a, b;
    for (int i = 0; i < 30; ++i) {
      a.push_back(rng.Gaussian(3));
      b.push_back(rng.Gaussian(3));
    }
    auto fa = QueryQuantiles(Rows(a), 0.7, *net);
    auto fb = QueryQuantiles(Rows(b), 0.7, *net);
    double sup = 0.0;
    for (size_t i = 0; i < fa->size(); ++i) {
      sup = std::max(sup, std::abs((*fa)[i] - (*fb)[i]));
    }
    EXPECT_EQ(sup, *DeltaQ(Rows(a), Rows(b), 0.7, *net));
  }
}

TEST(DeltaQTest, NetRefinementIsMonotone) {
  Rng rng(13);
  auto big = RandomSphereNet(2, 60, rng);
  std::vector<Point> sub(big->directions().begin(),
                         big->directions().begin() + 20);
  auto small = DirectionNet::Create(2, sub);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Point> a, b;
    for (int i = 0; i < 25; ++i) {
      a.push_back(rng.Gaussian(2));
      b.push_back(rng.Gaussian(2));
    }
    EXPECT_GE(*DeltaQ(Rows(a), Rows(b), 0.8, *big),
              *DeltaQ(Rows(a), Rows(b), 0.8, *small));
  }
}

TEST(FloatingBodyTest, CrossPoints) {
  Sample x = Rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  auto axes = AxisNet(2);
  // Each axis marginal is {-1, 0, 0, 1}. At q = 0.75 the 3rd order
  // statistic is 0 and the body collapses to the origin.
  auto fb = FloatingBody(x, 0.75, *axes);
  ASSERT_TRUE(fb.ok());
  ASSERT_EQ(fb->body.size(), 4u);
  for (const Halfspace& h : fb->body.halfspaces()) {
    EXPECT_EQ(h.offset, oracle::BruteQuantile({-1, 0, 0, 1}, 0.75));
  }
  EXPECT_TRUE(fb->empty);
  // At q = 0.8 the 4th order statistic is 1: the box [-1, 1]^2.
  fb = FloatingBody(x, 0.8, *axes);
  ASSERT_TRUE(fb.ok());
  for (const Halfspace& h : fb->body.halfspaces()) EXPECT_EQ(h.offset, 1.0);
  EXPECT_FALSE(fb->empty);
  EXPECT_NEAR(fb->ball.radius, 1.0, 1e-9);
  EXPECT_EQ(fb->source_hash, x.SourceHash());
}

TEST(FloatingBodyTest, OppositeDirectionsGiveSlab) {
  Rng rng(17);
  std::vector<Point> rows;
  for (int i = 0; i < 200; ++i) rows.push_back(rng.Gaussian(2));
  Sample x = Rows(rows);
  const Point u = {0.6, 0.8};
  auto net = DirectionNet::Create(2, {u, {-0.6, -0.8}, {0.8, -0.6},
                                      {-0.8, 0.6}});
  auto fb = FloatingBody(x, 0.8, *net);
  ASSERT_TRUE(fb.ok());
  const double hi = *QuantileAlong(x, u, 0.8);
  const double lo = -*QuantileAlong(x, {-0.6, -0.8}, 0.8);
  auto top = SupportFunction(fb->body, u);
  auto bottom = SupportFunction(fb->body, {-0.6, -0.8});
  EXPECT_LE(top->value, hi + 1e-9);
  EXPECT_GE(-bottom->value, lo - 1e-9);
}

TEST(FloatingBodyTest, TriangleClustersGiveEmptyBody) {
  // Depth above 1/3 is impossible for three equal clusters, and q = 0.6 asks
  // for depth 0.4.
  std::vector<Point> rows;
  for (int i = 0; i < 100; ++i) {
    rows.push_back({1, 0});
    rows.push_back({-0.5, 0.866});
    rows.push_back({-0.5, -0.866});
  }
  auto net = CircleNet(64);
  auto fb = FloatingBody(Rows(rows), 0.6, *net);
  ASSERT_TRUE(fb.ok());
  EXPECT_TRUE(fb->empty);
  EXPECT_LT(fb->ball.lp_radius, 0.0);
  EXPECT_FALSE(fb->body.feasible_witness().has_value());
}

TEST(FloatingBodyTest, DeepRowsAreContained) {
  Rng rng(19);
  auto net = RandomSphereNet(2, 50, rng);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Point> rows;
    for (int i = 0; i < 60; ++i) rows.push_back(rng.Gaussian(2));
    const double q = 0.7;
    auto fb = FloatingBody(Rows(rows), q, *net);
    ASSERT_TRUE(fb.ok());
    for (const Point& p : rows) {
      const double depth = oracle::TukeyDepth2D(rows, p);
      if (depth >= (1.0 - q) * rows.size()) {
        EXPECT_TRUE(fb->body.Contains(p, 1e-9));
      }
    }
  }
}

TEST(FloatingBodyTest, HausdorffStableUnderSmallDeltaQ) {
  // Replacing a few rows moves quantiles a little; the bodies then move by
  // at most 3 (R_max / R_min) delta_q.
  Rng rng(23);
  auto net = RandomSphereNet(2, 64, rng);
  DistributionSpec spec{DistributionKind::kIsotropicGaussian, 2, 31};
  for (int trial = 0; trial < 20; ++trial) {
    spec.seed = 31 + trial;
    auto x = SampleDistribution(spec, 3000);
    std::vector<Point> rows;
    for (int64_t i = 0; i < x->n(); ++i) {
      rows.emplace_back(x->row(i).begin(), x->row(i).end());
    }
    std::vector<Point> moved = rows;
    for (int i = 0; i < 10; ++i) moved[i] = rng.Gaussian(2);
    const double q = 0.75;
    auto fx = FloatingBody(Rows(rows), q, *net);
    auto fy = FloatingBody(Rows(moved), q, *net);
    ASSERT_TRUE(fx.ok() && fy.ok());
    const double dq = *DeltaQ(Rows(rows), Rows(moved), q, *net);
    const double r_min = fx->ball.radius;
    ASSERT_GT(r_min, 2.0 * dq);
    double r_max = 0.0;
    for (const Halfspace& h : fx->body.halfspaces()) {
      r_max = std::max(r_max, std::abs(h.offset));
    }
    auto haus = HausdorffNet(fx->body, fy->body, *net);
    ASSERT_TRUE(haus.ok());
    EXPECT_LE(*haus, 3.0 * r_max / r_min * dq + 1e-9);
  }
}

TEST(SphereNetTest, OneDimensional) {
  Rng rng(1);
  auto a = RandomSphereNet(1, 7, rng);
  auto b = DeterministicSphereNet(1, 0.3);
  EXPECT_THAT(a->directions(), ElementsAre(Point{1.0}, Point{-1.0}));
  EXPECT_THAT(b->directions(), ElementsAre(Point{1.0}, Point{-1.0}));
}

TEST(SphereNetTest, RandomIsSeedDeterministic) {
  Rng r1(42), r2(42);
  auto a = RandomSphereNet(4, 5, r1);
  auto b = RandomSphereNet(4, 5, r2);
  EXPECT_EQ(a->directions(), b->directions());
  for (const Point& u : a->directions()) EXPECT_NEAR(Norm2(u), 1.0, 1e-12);
}

TEST(SphereNetTest, DeterministicSeparation) {
  for (int d : {2, 3}) {
    auto net = DeterministicSphereNet(d, 0.5);
    ASSERT_TRUE(net.ok());
    for (size_t i = 0; i < net->size(); ++i) {
      for (size_t j = i + 1; j < net->size(); ++j) {
        EXPECT_GE(Distance((*net)[i], (*net)[j]), 0.5 - 1e-12);
      }
    }
  }
  EXPECT_EQ(ErrorKindOf(DeterministicSphereNet(4, 0.5).status()),
            ErrorKind::kInvalidParams);
}

TEST(HammingDistanceTest, Examples) {
  Sample x = Rows({{0, 1}, {2, 3}, {4, 5}});
  EXPECT_EQ(*HammingDistance(x, x), 0);
  EXPECT_EQ(*HammingDistance(x, Rows({{0, 1}, {2, 3.5}, {4, 5}})), 1);
  EXPECT_EQ(*HammingDistance(x, Rows({{9, 1}, {2, 9}, {9, 9}})), 3);
  EXPECT_EQ(ErrorKindOf(HammingDistance(x, Rows({{0}, {1}, {2}})).status()),
            ErrorKind::kDimensionMismatch);
}

}  // namespace
}  // namespace floatbody
