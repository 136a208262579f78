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

#include "floatbody/geometry.h"

#include <cmath>

#include "floatbody/quantile.h"
#include "floatbody/simplex.h"
#include "floatbody/status.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/oracles.h"

namespace floatbody {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;

Polytope TangentBall(const Point& center, double radius, int m) {
  auto net = CircleNet(m);
  std::vector<double> h;
  for (const Point& u : net->directions()) h.push_back(Dot(u, center) + radius);
  Polytope k = *PolytopeFromSupport(*net, h);
  k.set_feasible_witness(center);
  return k;
}

TEST(SupportFunctionTest, TangentBall) {
  Polytope k = TangentBall({0.0, 0.0}, 1.0, 64);
  auto s = SupportFunction(k, {1.0, 0.0});
  ASSERT_TRUE(s.ok());
  // Tangent polygon circumradius is 1 / cos(pi / 64).
  EXPECT_NEAR(s->value, 1.0, 1.0 / std::cos(M_PI / 64) - 1.0 + 1e-12);
}

TEST(SupportFunctionTest, BoxMatchesVertexEnumeration) {
  Polytope box = Polytope::Box(2, -1.0, 1.0);
  const auto verts = oracle::BoxVertices(2, -1.0, 1.0);
  auto s = SupportFunction(box, {1.0, 0.0});
  ASSERT_TRUE(s.ok());
  EXPECT_NEAR(s->value, 1.0, 1e-12);
  EXPECT_NEAR(s->maximizer[0], 1.0, 1e-12);
  const Point diag = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  s = SupportFunction(box, diag);
  ASSERT_TRUE(s.ok());
  EXPECT_NEAR(s->value, oracle::VertexSupport(verts, diag), 1e-10);
  EXPECT_NEAR(s->value, 1.41421356, 1e-8);
  EXPECT_TRUE(box.Contains(s->maximizer));
}

TEST(SupportFunctionTest, RandomBoxesAgreeWithVertices) {
  Rng rng(11);
  for (int d = 1; d <= 4; ++d) {
    Polytope box = Polytope::Box(d, -0.5, 2.0);
    const auto verts = oracle::BoxVertices(d, -0.5, 2.0);
    for (int i = 0; i < 20; ++i) {
      Point theta = rng.UnitSphere(d);
      auto s = SupportFunction(box, theta);
      ASSERT_TRUE(s.ok());
      EXPECT_NEAR(s->value, oracle::VertexSupport(verts, theta), 1e-9);
      EXPECT_NEAR(Dot(s->maximizer, theta), s->value, 1e-9);
    }
  }
}

TEST(SupportFunctionTest, Errors) {
  auto half = Polytope::Create(2, {{{1.0, 0.0}, 0.0}});
  ASSERT_TRUE(half.ok());
  EXPECT_EQ(ErrorKindOf(SupportFunction(*half, {0.0, 1.0}).status()),
            ErrorKind::kUnbounded);
  auto empty = Polytope::Create(
      1, {{{1.0}, -1.0}, {{-1.0}, -1.0}});  // x <= -1 and x >= 1
  ASSERT_TRUE(empty.ok());
  EXPECT_EQ(ErrorKindOf(SupportFunction(*empty, {1.0}).status()),
            ErrorKind::kInfeasible);
}

TEST(SupportFunctionTest, DominatesWitness) {
  Rng rng(5);
  Polytope k = TangentBall({0.3, -0.2}, 0.7, 16);
  for (int i = 0; i < 50; ++i) {
    Point theta = rng.UnitSphere(2);
    auto s = SupportFunction(k, theta);
    ASSERT_TRUE(s.ok());
    EXPECT_GE(s->value + 1e-12, Dot(*k.feasible_witness(), theta));
  }
}

TEST(HausdorffNetTest, Examples) {
  Polytope box1 = Polytope::Box(2, -1.0, 1.0);
  Polytope box2 = Polytope::Box(2, -2.0, 2.0);
  const double s = 1.0 / std::sqrt(2.0);
  auto net = DirectionNet::Create(
      2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {s, s}, {-s, s}, {s, -s}, {-s, -s}});
  ASSERT_TRUE(net.ok());
  EXPECT_NEAR(*HausdorffNet(box1, box1, *net), 0.0, 1e-12);
  // Diagonal support gap 2 sqrt(2) - sqrt(2).
  EXPECT_NEAR(*HausdorffNet(box1, box2, *net), std::sqrt(2.0), 1e-9);
  auto circle = CircleNet(64);
  Polytope b1 = TangentBall({0, 0}, 1.0, 64);
  Polytope b2 = TangentBall({0, 0}, 2.0, 64);
  EXPECT_NEAR(*HausdorffNet(b1, b2, *circle), 1.0, 1e-6);
}

TEST(ChebyshevBallTest, Examples) {
  auto ball = ChebyshevBall(Polytope::Box(2, -1.0, 1.0));
  ASSERT_TRUE(ball.ok());
  EXPECT_NEAR(ball->radius, 1.0, 1e-12);
  EXPECT_THAT(ball->center, ElementsAre(DoubleNear(0, 1e-12), DoubleNear(0, 1e-12)));

  auto k = Polytope::Create(2, {{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 2}, {{0, -1}, 0}});
  ASSERT_TRUE(k.ok());
  ball = ChebyshevBall(*k);
  ASSERT_TRUE(ball.ok());
  EXPECT_NEAR(ball->radius, 1.0, 1e-12);
  EXPECT_THAT(ball->center, ElementsAre(DoubleNear(0, 1e-9), DoubleNear(1, 1e-9)));
  for (const Halfspace& h : k->halfspaces()) {
    EXPECT_LE(Dot(ball->center, h.normal) + ball->radius, h.offset + 1e-9);
  }

  auto half = Polytope::Create(2, {{{1, 0}, 1}});
  EXPECT_EQ(ErrorKindOf(ChebyshevBall(*half).status()), ErrorKind::kUnbounded);
}

TEST(ChebyshevBallTest, EmptyPolytopeReportsZeroRadius) {
  auto k = Polytope::Create(1, {{{1.0}, -1.0}, {{-1.0}, -1.0}});
  auto ball = ChebyshevBall(*k);
  ASSERT_TRUE(ball.ok());
  EXPECT_TRUE(ball->empty);
  EXPECT_EQ(ball->radius, 0.0);
  EXPECT_NEAR(ball->lp_radius, -1.0, 1e-9);
}

TEST(SteinerPointTest, BallCenter) {
  const Point c = {3.0, -1.0};
  const double rho = 0.5;
  Polytope k = TangentBall(c, rho, 64);
  Rng rng(3);
  const int m = 400;
  auto s = SteinerPoint(k, m, rng);
  ASSERT_TRUE(s.ok());
  EXPECT_LE(Distance(s->point, c), 3.0 * rho / std::sqrt(m));
  EXPECT_TRUE(k.Contains(s->point));
}

TEST(SteinerPointTest, BoxCenterAndEquivariance) {
  for (int d : {2, 3, 5}) {
    Polytope box = Polytope::Box(d, -1.0, 1.0);
    Rng rng(d);
    const int m = 500;
    auto s = SteinerPoint(box, m, rng);
    ASSERT_TRUE(s.ok());
    EXPECT_LE(Norm2(s->point), 3.0 * std::sqrt(d) / std::sqrt(m));
    EXPECT_TRUE(box.Contains(s->point));

    Point v(d, 0.25);
    std::vector<Halfspace> hs = box.halfspaces();
    for (Halfspace& h : hs) h.offset += Dot(h.normal, v);
    auto shifted = Polytope::Create(d, hs);
    Rng rng2(d);
    auto s2 = SteinerPoint(*shifted, m, rng2);
    ASSERT_TRUE(s2.ok());
    for (int i = 0; i < d; ++i) {
      EXPECT_NEAR(s2->point[i] - s->point[i], v[i], 1e-9);
    }
  }
}

TEST(ProjectTest, Examples) {
  Polytope box = Polytope::Box(2, -1.0, 1.0);
  auto p = Project(box, {0.2, -0.3});
  ASSERT_TRUE(p.ok());
  EXPECT_THAT(p->point, ElementsAre(0.2, -0.3));

  auto half = Polytope::Create(2, {{{1, 0}, 0}}, Point{-1.0, 0.0});
  p = Project(*half, {2.0, 5.0});
  ASSERT_TRUE(p.ok());
  EXPECT_NEAR(p->point[0], 0.0, 1e-12);
  EXPECT_NEAR(p->point[1], 5.0, 1e-12);

  p = Project(box, {3.0, 0.5});
  ASSERT_TRUE(p.ok());
  // Coordinate-wise clamp.
  EXPECT_NEAR(p->point[0], 1.0, 1e-8);
  EXPECT_NEAR(p->point[1], 0.5, 1e-8);

  auto no_witness = Polytope::Create(2, {{{1, 0}, 0}});
  EXPECT_EQ(ErrorKindOf(Project(*no_witness, {1, 1}).status()),
            ErrorKind::kInfeasible);
}

TEST(ProjectTest, RandomBoxesMatchClamp) {
  Rng rng(17);
  for (int d = 1; d <= 5; ++d) {
    Polytope box = Polytope::Box(d, -1.0, 2.0);
    for (int i = 0; i < 30; ++i) {
      Point x = rng.Gaussian(d);
      for (double& v : x) v *= 3.0;
      auto p = Project(box, x);
      ASSERT_TRUE(p.ok());
      for (int j = 0; j < d; ++j) {
        EXPECT_NEAR(p->point[j], std::clamp(x[j], -1.0, 2.0), 1e-7);
      }
    }
  }
}

TEST(ProjectTest, Contraction) {
  Rng rng(23);
  Polytope k = TangentBall({0.1, 0.2}, 1.0, 12);
  const double tol = 1e-8;
  for (int i = 0; i < 100; ++i) {
    Point x = rng.Gaussian(2);
    Point y = rng.Gaussian(2);
    for (double& v : x) v *= 3.0;
    for (double& v : y) v *= 3.0;
    auto px = Project(k, x, {tol, 100000});
    auto py = Project(k, y, {tol, 100000});
    ASSERT_TRUE(px.ok() && py.ok());
    EXPECT_LE(Distance(px->point, py->point), Distance(x, y) + 2 * tol);
    EXPECT_TRUE(k.Contains(px->point, 1e-7));
  }
}

// Nearest feasible point among the projections onto each boundary line and
// the pairwise line intersections; exact for planar polygons.
Point BrutePlanarProjection(const Polytope& k, const Point& x) {
  const auto& hs = k.halfspaces();
  std::vector<Point> cands = {x};
  for (const Halfspace& a : hs) {
    const double v = Dot(a.normal, x) - a.offset;
    cands.push_back({x[0] - v * a.normal[0], x[1] - v * a.normal[1]});
  }
  for (size_t u = 0; u < hs.size(); ++u) {
    for (size_t w = u + 1; w < hs.size(); ++w) {
      const Point& a = hs[u].normal;
      const Point& b = hs[w].normal;
      const double det = a[0] * b[1] - a[1] * b[0];
      if (std::abs(det) < 1e-12) continue;
      cands.push_back({(hs[u].offset * b[1] - hs[w].offset * a[1]) / det,
                       (a[0] * hs[w].offset - b[0] * hs[u].offset) / det});
    }
  }
  Point best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const Point& c : cands) {
    if (k.Contains(c, 1e-9) && Distance(c, x) < best_dist) {
      best_dist = Distance(c, x);
      best = c;
    }
  }
  return best;
}

TEST(ProjectTest, RandomPolygonsMatchBruteForce) {
  Rng rng(31);
  for (int i = 0; i < 400; ++i) {
    const int m = static_cast<int>(rng.UniformInt(3, 24));
    auto net = CircleNet(m, 6.3 * rng.Uniform());
    ASSERT_TRUE(net.ok());
    std::vector<double> h(m);
    for (double& v : h) v = 0.2 + 1.8 * rng.Uniform();
    auto k = PolytopeFromSupport(*net, h);
    ASSERT_TRUE(k.ok());
    k->set_feasible_witness(Point{0.0, 0.0});
    const Point x = rng.UniformBall(2, 8.0);
    auto p = Project(*k, x);
    ASSERT_TRUE(p.ok());
    EXPECT_TRUE(p->converged);
    const Point want = BrutePlanarProjection(*k, x);
    EXPECT_LE(Distance(p->point, want), 1e-6) << "polygon " << i;
  }
}

TEST(SimplexTest, SolveSquare) {
  std::vector<double> x;
  ASSERT_TRUE(SolveSquare({{2, 1}, {1, 3}}, {3, 5}, &x));
  EXPECT_NEAR(x[0], 0.8, 1e-12);
  EXPECT_NEAR(x[1], 1.4, 1e-12);
  EXPECT_FALSE(SolveSquare({{1, 2}, {2, 4}}, {1, 2}, &x));
}

TEST(SimplexTest, DegenerateVertexTerminates) {
  // Many constraints through the same vertex (1, 1).
  std::vector<Halfspace> hs;
  for (int i = 0; i < 40; ++i) {
    const double a = M_PI / 2 * (0.1 + 0.8 * i / 39.0);
    Point u = {std::cos(a), std::sin(a)};
    hs.push_back({u, u[0] + u[1]});
  }
  hs.push_back({{-1, 0}, 5});
  hs.push_back({{0, -1}, 5});
  LpSolution sol = SolveLp(hs, 2, {1.0, 1.0});
  ASSERT_EQ(sol.outcome, LpOutcome::kOptimal);
  EXPECT_NEAR(sol.value, 2.0, 1e-9);
}

}  // namespace
}  // namespace floatbody
