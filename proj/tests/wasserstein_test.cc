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

#include "floatbody/wasserstein.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "floatbody/rng.h"
#include "floatbody/status.h"
#include "gtest/gtest.h"
#include "testing/oracles.h"

namespace floatbody {
namespace {

std::vector<Point> Cloud(int m, int d, Rng& rng) {
  std::vector<Point> out;
  for (int i = 0; i < m; ++i) out.push_back(rng.Gaussian(d));
  return out;
}

TEST(WassersteinTest, IdenticalCloudsAreAtZero) {
  Rng rng(1);
  auto p = Cloud(30, 3, rng);
  auto q = p;
  std::reverse(q.begin(), q.end());
  EXPECT_NEAR(*Wasserstein2Empirical(p, q), 0.0, 1e-12);
}

TEST(WassersteinTest, SingletonsAreTheirDistance) {
  EXPECT_NEAR(*Wasserstein2Empirical({{1.0, 2.0}}, {{4.0, 6.0}}), 5.0, 1e-15);
  EXPECT_NEAR(*WassersteinEmpirical({{1.0, 2.0}}, {{4.0, 6.0}}, 1), 5.0,
              1e-15);
}

TEST(WassersteinTest, OneDimensionalExample) {
  const double expected = std::sqrt((0.25 + 1.0) / 2.0);
  EXPECT_NEAR(*Wasserstein2Empirical({{0.0}, {1.0}}, {{0.5}, {2.0}}), expected,
              1e-15);
  EXPECT_NEAR(expected, 0.7906, 1e-4);
  // The crossed matching costs (4 + 0.25) / 2.
  EXPECT_GT(std::sqrt(4.25 / 2.0), expected);
  EXPECT_NEAR(oracle::BruteWasserstein({{0.0}, {1.0}}, {{0.5}, {2.0}}, 2),
              expected, 1e-15);
}

TEST(WassersteinTest, MatchesBruteForceUpToSixPoints) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 6;
    const int d = 1 + (trial / 6) % 3;
    auto a = Cloud(m, d, rng);
    auto b = Cloud(m, d, rng);
    for (int p : {1, 2}) {
      EXPECT_NEAR(*WassersteinEmpirical(a, b, p),
                  oracle::BruteWasserstein(a, b, p), 1e-12)
          << "m=" << m << " d=" << d << " p=" << p;
    }
  }
}

TEST(WassersteinTest, AssignmentIsOptimalPermutation) {
  Rng rng(3);
  const int m = 6;
  std::vector<double> cost(m * m);
  for (double& c : cost) c = rng.Uniform();
  std::vector<int> a = SolveAssignment(cost, m);
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> id(m);
  std::iota(id.begin(), id.end(), 0);
  ASSERT_EQ(sorted, id);
  double got = 0.0;
  for (int i = 0; i < m; ++i) got += cost[i * m + a[i]];
  double best = 1e300;
  do {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += cost[i * m + id[i]];
    best = std::min(best, s);
  } while (std::next_permutation(id.begin(), id.end()));
  EXPECT_NEAR(got, best, 1e-12);
}

TEST(WassersteinTest, W1NeverExceedsW2) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = Cloud(40, 2, rng);
    auto b = Cloud(40, 2, rng);
    for (Point& p : b) p[0] += 0.5;
    EXPECT_LE(*WassersteinEmpirical(a, b, 1),
              *WassersteinEmpirical(a, b, 2) + 1e-12);
  }
}

TEST(WassersteinTest, TranslationShiftsByItsLength) {
  Rng rng(5);
  auto a = Cloud(50, 2, rng);
  auto b = a;
  for (Point& p : b) {
    p[0] += 3.0;
    p[1] -= 4.0;
  }
  EXPECT_NEAR(*Wasserstein2Empirical(a, b), 5.0, 1e-9);
}

TEST(WassersteinTest, Errors) {
  EXPECT_EQ(ErrorKindOf(Wasserstein2Empirical({{0.0}}, {{0.0}, {1.0}}).status()),
            ErrorKind::kSizeMismatch);
  EXPECT_EQ(
      ErrorKindOf(Wasserstein2Empirical({{0.0, 1.0}}, {{0.0}}).status()),
      ErrorKind::kSizeMismatch);
  EXPECT_EQ(ErrorKindOf(Wasserstein2Empirical({}, {}).status()),
            ErrorKind::kInvalidParams);
  EXPECT_EQ(ErrorKindOf(WassersteinEmpirical({{0.0}}, {{1.0}}, 3).status()),
            ErrorKind::kInvalidParams);
  std::vector<Point> big(2049, Point{0.0, 0.0});
  EXPECT_EQ(ErrorKindOf(Wasserstein2Empirical(big, big).status()),
            ErrorKind::kTooLarge);
}

}  // namespace
}  // namespace floatbody
