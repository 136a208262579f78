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

#include "floatbody/gamma_segment.h"

#include <cmath>

#include "floatbody/rng.h"
#include "floatbody/status.h"
#include "gtest/gtest.h"
#include "testing/oracles.h"

namespace floatbody {
namespace {

// sum_j k!/(k-j)! x^(k-j), written out term by term.
double ExplicitG(int k, double x) {
  double sum = 0.0;
  double falling = 1.0;
  for (int j = 0; j <= k; ++j) {
    sum += falling * std::pow(x, k - j);
    falling *= (k - j);
  }
  return sum;
}

TEST(GPolyTest, SmallCases) {
  EXPECT_EQ(GPoly(0, 3.7), 1.0);
  EXPECT_EQ(GPoly(2, 3.0), 17.0);
  double fact = 1.0;
  for (int k = 0; k <= 12; ++k) {
    if (k > 0) fact *= k;
    EXPECT_EQ(GPoly(k, 0.0), fact);
  }
}

TEST(GPolyTest, MatchesExplicitPolynomial) {
  for (int k = 0; k <= 10; ++k) {
    for (double x : {0.0, 0.3, 1.0, 2.5, 7.0, 19.0}) {
      EXPECT_NEAR(GPoly(k, x), ExplicitG(k, x), 1e-13 * ExplicitG(k, x));
      EXPECT_NEAR(LogGPoly(k, x), std::log(ExplicitG(k, x)), 1e-13);
    }
  }
}

TEST(SegmentGammaTest, KnownValues) {
  auto v = SegmentGammaIntegral(1.0, 2.0, 1);
  ASSERT_TRUE(v.ok());
  EXPECT_NEAR(*v, 2.0 * std::exp(-1.0) - 3.0 * std::exp(-2.0), 1e-15);
  EXPECT_NEAR(*v, 0.329753, 1e-6);
  auto full = SegmentGammaIntegral(0.0, INFINITY, 2);
  ASSERT_TRUE(full.ok());
  EXPECT_NEAR(*full, 2.0, 1e-14);
  auto near_full = SegmentGammaIntegral(1e-12, 200.0, 2);
  EXPECT_NEAR(*near_full, 2.0, 1e-12);
}

TEST(SegmentGammaTest, MatchesQuadratureOracle) {
  Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    const int k = static_cast<int>(rng.UniformInt(0, 40));
    const double a = 50.0 * rng.Uniform();
    const double b = a + 0.01 + 30.0 * rng.Uniform();
    auto v = SegmentGammaIntegral(a, b, k);
    ASSERT_TRUE(v.ok());
    const double ref = oracle::GammaSegment(a, b, k);
    EXPECT_NEAR(*v, ref, 1e-10 * ref) << "a=" << a << " b=" << b << " k=" << k;
  }
}

TEST(SegmentGammaTest, Additivity) {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const int k = static_cast<int>(rng.UniformInt(0, 30));
    const double a = 20.0 * rng.Uniform();
    const double b = a + 10.0 * rng.Uniform() + 1e-3;
    const double c = b + 10.0 * rng.Uniform() + 1e-3;
    const double whole = *SegmentGammaIntegral(a, c, k);
    EXPECT_NEAR(whole,
                *SegmentGammaIntegral(a, b, k) + *SegmentGammaIntegral(b, c, k),
                1e-12 * whole);
  }
}

TEST(SegmentGammaTest, LogDomainForLargeK) {
  // Nearly the whole gamma integral, so the log is lgamma(k + 1).
  for (int k : {80, 150, 400}) {
    auto l = LogSegmentGammaIntegral(0.0, 10.0 * k, k);
    ASSERT_TRUE(l.ok());
    EXPECT_NEAR(*l, std::lgamma(k + 1.0), 1e-10 * std::lgamma(k + 1.0));
  }
  // A narrow window far in the tail, against log of the midpoint rule bound.
  auto tail = LogSegmentGammaIntegral(2000.0, 2000.001, 100);
  ASSERT_TRUE(tail.ok());
  const double mid = 2000.0005;
  EXPECT_NEAR(*tail, 100.0 * std::log(mid) - mid + std::log(0.001), 1e-6);
}

TEST(SegmentGammaTest, UpperAndLowerSumToGamma) {
  for (int k : {0, 1, 5, 30}) {
    for (double x : {0.5, 3.0, 31.0, 60.0}) {
      const double lu = LogUpperGammaIntegral(k, x);
      const double ll = LogLowerGammaIntegral(k, x);
      EXPECT_NEAR(std::exp(lu) + std::exp(ll), std::tgamma(k + 1.0),
                  1e-12 * std::tgamma(k + 1.0));
    }
  }
}

TEST(SegmentGammaTest, InvalidInterval) {
  EXPECT_EQ(ErrorKindOf(SegmentGammaIntegral(2.0, 1.0, 1).status()),
            ErrorKind::kInvalidParams);
  EXPECT_EQ(ErrorKindOf(SegmentGammaIntegral(-1.0, 1.0, 1).status()),
            ErrorKind::kInvalidParams);
  EXPECT_EQ(ErrorKindOf(LogSegmentGammaIntegral(0.0, 1.0, -1).status()),
            ErrorKind::kInvalidParams);
}

TEST(GaussLegendreTest, ExactForPolynomials) {
  for (int n : {1, 2, 5, 20}) {
    GaussLegendreRule rule = MakeGaussLegendre(n);
    ASSERT_EQ(rule.nodes.size(), static_cast<size_t>(n));
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        s += rule.weights[i] * std::pow(rule.nodes[i], deg);
      }
      const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
      EXPECT_NEAR(s, exact, 1e-13) << "n=" << n << " deg=" << deg;
    }
  }
}

}  // namespace
}  // namespace floatbody
