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

#include "floatbody/sample_size.h"

#include <cmath>

#include "floatbody/admissible.h"
#include "floatbody/status.h"
#include "floatbody/typical_set.h"
#include "gtest/gtest.h"

namespace floatbody {
namespace {

AdmissibleParams Params() {
  AdmissibleParams p;
  p.q = 0.75;
  p.r_min = 0.5;
  p.r_max = 1.0;
  p.r = 0.4;
  p.l = 0.25;
  p.b = 100.0;
  return p;
}

TEST(SampleSizeTest, MatchesHandEvaluatedFormula) {
  const AdmissibleParams p = Params();
  HolderQuerySpec spec{1.0, 2.0, 3, NormKind::kL2};
  SampleSizeConstants c{1.0, 1.0, 1.0, 4.0};
  auto t = SampleSizeBreakdown(0.1, 0.1, 1.0, spec, 2, 16, p, c);
  ASSERT_TRUE(t.ok()) << t.status();
  // min(ln 16, d = 2) = 2.
  const double w = 4.0 * (2.0 + std::log(10.0));
  EXPECT_NEAR(t->w, w, 1e-12);
  EXPECT_NEAR(t->statistical,
              4.0 * (2.0 + std::log(40.0)) / (0.01 * 0.0625), 1e-8);
  EXPECT_NEAR(t->privacy,
              w * 2.0 * (std::log(10.0) + 3.0 * std::log(3.0)) / (0.1 * 0.25),
              1e-8);
  // log((R_max + r) / alpha + 1) = log 15.
  EXPECT_NEAR(t->cap, w * 3.0 * std::log(15.0) / (0.4 * 0.25), 1e-10);
  EXPECT_EQ(t->n,
            static_cast<int64_t>(std::ceil(t->statistical + t->privacy +
                                           t->cap)));
}

TEST(SampleSizeTest, DoublingKScalesTerms) {
  const AdmissibleParams p = Params();
  HolderQuerySpec a{1.0, 0.5, 2, NormKind::kL2};
  HolderQuerySpec b = a;
  b.k = 1.0;
  auto ta = SampleSizeBreakdown(0.05, 0.1, 1.0, a, 3, 50, p);
  auto tb = SampleSizeBreakdown(0.05, 0.1, 1.0, b, 3, 50, p);
  ASSERT_TRUE(ta.ok() && tb.ok());
  EXPECT_NEAR(tb->statistical / ta->statistical, 4.0, 1e-12);
  EXPECT_NEAR(tb->privacy / ta->privacy, 2.0, 1e-12);
  EXPECT_NEAR(tb->cap, ta->cap, 1e-9);
}

TEST(SampleSizeTest, HolderExponentEntersAsPowers) {
  const AdmissibleParams p = Params();
  SampleSizeConstants c{1.0, 1.0, 1.0, 4.0};
  HolderQuerySpec lip{1.0, 0.8, 1, NormKind::kL2};
  HolderQuerySpec half{0.5, 0.8, 1, NormKind::kL2};
  auto t1 = SampleSizeBreakdown(0.1, 0.1, 2.0, lip, 2, 8, p, c);
  auto t2 = SampleSizeBreakdown(0.1, 0.1, 2.0, half, 2, 8, p, c);
  ASSERT_TRUE(t1.ok() && t2.ok());
  // (K/alpha)^{2/h}: squaring the ratio when h halves.
  const double ratio = 0.8 / 0.1;
  EXPECT_NEAR(t2->statistical / t1->statistical, ratio * ratio, 1e-9);
  EXPECT_NEAR(t2->privacy / t1->privacy,
              ratio * std::log(10.0) / 2.0, 1e-9);
}

// With M = d, h = 1 and K = 6 sqrt(d) (R_max + r) / R_min the privacy term
// grows like sqrt(d) (log(1/beta) + d log d) W, and W ~ d for a net with
// log|A| >= d, giving the d^{2.5} / (eps alpha) rate up to log d.
TEST(SampleSizeTest, SteinerChoiceGivesDTwoPointFiveScaling) {
  const AdmissibleParams p = Params();
  auto privacy_at = [&](int d) {
    HolderQuerySpec spec;
    spec.h = 1.0;
    spec.m = d;
    spec.k = 6.0 * std::sqrt(static_cast<double>(d)) * (p.r_max + p.r) /
             p.r_min;
    // Huge net so that W = c_w (d + log(1/beta)).
    auto t = SampleSizeBreakdown(0.01, 0.1, 1.0, spec, d, size_t{1} << 62, p);
    EXPECT_TRUE(t.ok()) << t.status();
    EXPECT_NEAR(t->w, 4.0 * (d + std::log(10.0)), 1e-9);
    return t->privacy / (t->w * (std::log(10.0) + d * std::log(d)));
  };
  for (int d : {4, 8, 16}) {
    const double ratio = privacy_at(2 * d) / privacy_at(d);
    EXPECT_NEAR(ratio, std::sqrt(2.0), 1e-9) << "d = " << d;
  }
}

TEST(SampleSizeTest, AlphaAtBoundaryIsRejected) {
  const AdmissibleParams p = Params();
  HolderQuerySpec spec{1.0, 0.5, 1, NormKind::kL2};
  const double boundary = 0.5 * 0.4 / 2.0;
  auto at = SampleSize(boundary, 0.1, 1.0, spec, 2, 8, p);
  EXPECT_EQ(ErrorKindOf(at.status()), ErrorKind::kAlphaTooLarge);
  auto above = SampleSize(2 * boundary, 0.1, 1.0, spec, 2, 8, p);
  EXPECT_EQ(ErrorKindOf(above.status()), ErrorKind::kAlphaTooLarge);
  auto below = SampleSize(boundary * (1 - 1e-9), 0.1, 1.0, spec, 2, 8, p);
  EXPECT_TRUE(below.ok()) << below.status();
}

TEST(SampleSizeTest, MonotoneInAccuracyAndPrivacy) {
  const AdmissibleParams p = Params();
  HolderQuerySpec spec{1.0, 1.0, 4, NormKind::kLInf};
  int64_t prev = 0;
  for (double alpha : {0.15, 0.1, 0.05, 0.01}) {
    auto n = SampleSize(alpha, 0.1, 1.0, spec, 2, 8, p);
    ASSERT_TRUE(n.ok());
    EXPECT_GT(*n, prev);
    prev = *n;
  }
  prev = 0;
  for (double eps : {10.0, 1.0, 0.1, 0.01}) {
    auto n = SampleSize(0.05, 0.1, eps, spec, 2, 8, p);
    ASSERT_TRUE(n.ok());
    EXPECT_GT(*n, prev);
    prev = *n;
  }
}

TEST(SampleSizeTest, RejectsBadInputs) {
  const AdmissibleParams p = Params();
  HolderQuerySpec spec;
  EXPECT_EQ(ErrorKindOf(SampleSize(0.01, 0.0, 1.0, spec, 2, 8, p).status()),
            ErrorKind::kInvalidParams);
  EXPECT_EQ(ErrorKindOf(SampleSize(0.01, 0.1, 0.0, spec, 2, 8, p).status()),
            ErrorKind::kInvalidParams);
  spec.h = 1.5;
  EXPECT_EQ(ErrorKindOf(SampleSize(0.01, 0.1, 1.0, spec, 2, 8, p).status()),
            ErrorKind::kInvalidParams);
  HolderQuerySpec tiny;
  EXPECT_EQ(
      ErrorKindOf(SampleSize(1e-12, 1e-300, 1e-12, tiny, 2, 8, p).status()),
      ErrorKind::kTooLarge);
}

}  // namespace
}  // namespace floatbody
