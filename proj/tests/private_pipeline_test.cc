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

#include "floatbody/private_pipeline.h"

#include <cmath>
#include <string>

#include "floatbody/admissible.h"
#include "floatbody/distribution.h"
#include "floatbody/quantile.h"
#include "floatbody/rng.h"
#include "floatbody/status.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace floatbody {
namespace {

using ::testing::HasSubstr;

constexpr int64_t kRows = 3000;
constexpr double kQ75 = 0.6744897501960817;

PipelineOptions GateOnly() {
  PipelineOptions o;
  o.policy = BatchPolicy::kGateOnly;
  return o;
}

LangevinConfig Steps(int64_t k) {
  LangevinConfig cfg;
  cfg.k = k;
  cfg.eta = 0.002;
  cfg.trunc = TruncationRadius(2, std::max<int64_t>(k, 1));
  return cfg;
}

Sample Gaussian(int64_t n, uint64_t seed) {
  return *SampleDistribution({DistributionKind::kIsotropicGaussian, 2, seed},
                             n);
}

// Smallest seed whose k + 1 batches all pass the gate.
uint64_t TypicalSeed(int64_t k) {
  const AdmissibleParams p = *GaussianParams(0.75, 2, kRows);
  const DirectionNet net = *CircleNet(16);
  for (uint64_t seed = 1; seed < 200; ++seed) {
    Rng rng(1);
    auto s = PreparedFloatingBodySampler::Create(
        Gaussian(kRows * (k + 1), seed), net, 1e6, 0.1, p, Steps(k), rng,
        GateOnly());
    if (s.ok()) return seed;
  }
  ADD_FAILURE() << "no typical seed";
  return 0;
}

TEST(PipelineTest, ZeroStepsIsThePrivateSteinerPoint) {
  const AdmissibleParams p = *GaussianParams(0.75, 2, kRows);
  const DirectionNet net = *CircleNet(16);
  const Sample x = Gaussian(kRows, TypicalSeed(0));
  Rng a(4);
  auto res = PrivateSampleFloatingBody(x, net, 2.0, 0.1, p, Steps(0), a,
                                       GateOnly());
  ASSERT_TRUE(res.ok()) << res.status();
  EXPECT_TRUE(res->steiner_only);
  Rng b(4);
  auto direct = PrivateSteiner(x, net, 2.0, p, b);
  ASSERT_TRUE(direct.ok()) << direct.status();
  EXPECT_EQ(res->point, *direct);
  ASSERT_EQ(res->ledger.calls().size(), 1u);
  EXPECT_EQ(res->ledger.calls()[0].op, "private_steiner");
}

TEST(PipelineTest, LedgerBatchesAreDisjointAndEachSpendsEpsilon) {
  const int64_t k = 4;
  const AdmissibleParams p = *GaussianParams(0.75, 2, kRows);
  const DirectionNet net = *CircleNet(16);
  const Sample x = Gaussian(kRows * (k + 1), TypicalSeed(k));
  Rng rng(8);
  auto res = PrivateSampleFloatingBody(x, net, 0.5, 0.1, p, Steps(k), rng,
                                       GateOnly());
  ASSERT_TRUE(res.ok()) << res.status();
  const PrivacyLedger& ledger = res->ledger;
  EXPECT_TRUE(ledger.Disjoint());
  ASSERT_EQ(ledger.batches().size(), static_cast<size_t>(k + 1));
  for (int64_t b = 0; b <= k; ++b) {
    EXPECT_EQ(ledger.batches()[b].end - ledger.batches()[b].begin, kRows);
    EXPECT_DOUBLE_EQ(ledger.BatchEpsilon(b), 0.5);
  }
  EXPECT_DOUBLE_EQ(ledger.total_epsilon(), 0.5);
  EXPECT_DOUBLE_EQ(ledger.naive_sum(), 0.5 * (k + 1));
}

TEST(PipelineTest, HugeEpsilonChainStaysNearTheBody) {
  const int64_t k = 3;
  const AdmissibleParams p = *GaussianParams(0.75, 2, kRows);
  const DirectionNet net = *CircleNet(16);
  const Sample x = Gaussian(kRows * (k + 1), TypicalSeed(k));
  Rng rng(2);
  auto s = PreparedFloatingBodySampler::Create(x, net, 1e6, 0.1, p, Steps(k),
                                               rng, GateOnly());
  ASSERT_TRUE(s.ok()) << s.status();
  EXPECT_EQ(s->batches(), k + 1);
  EXPECT_EQ(s->bodies().size(), static_cast<size_t>(k));
  for (int i = 0; i < 20; ++i) {
    auto pt = s->Draw(rng, nullptr);
    ASSERT_TRUE(pt.ok()) << pt.status();
    EXPECT_LE(s->bodies().back().MaxViolation(*pt), 1e-3);
    EXPECT_LT(Norm2(*pt), kQ75 + 0.1);
  }
}

TEST(PipelineTest, RepeatedDrawsChargeEveryBatch) {
  const int64_t k = 2;
  const AdmissibleParams p = *GaussianParams(0.75, 2, kRows);
  const DirectionNet net = *CircleNet(16);
  const Sample x = Gaussian(kRows * (k + 1), TypicalSeed(k));
  Rng rng(3);
  auto s = PreparedFloatingBodySampler::Create(x, net, 1.0, 0.1, p, Steps(k),
                                               rng, GateOnly());
  ASSERT_TRUE(s.ok()) << s.status();
  PrivacyLedger ledger;
  ASSERT_TRUE(s->RegisterBatches(ledger).ok());
  for (int i = 0; i < 3; ++i) ASSERT_TRUE(s->Draw(rng, &ledger).ok());
  EXPECT_EQ(ledger.calls().size(), 9u);
  EXPECT_DOUBLE_EQ(ledger.total_epsilon(), 3.0);
}

TEST(PipelineTest, AtypicalBatchIsNamed) {
  const int64_t k = 2;
  const AdmissibleParams p = *GaussianParams(0.75, 2, kRows);
  const DirectionNet net = *CircleNet(16);
  const Sample good = Gaussian(kRows * (k + 1), TypicalSeed(k));
  std::vector<Point> rows;
  for (int64_t i = 0; i < good.n(); ++i) {
    if (i >= 2 * kRows) {
      rows.push_back({0.2, 0.2});
    } else {
      rows.emplace_back(good.row(i).begin(), good.row(i).end());
    }
  }
  Rng rng(1);
  auto s = PreparedFloatingBodySampler::Create(*Sample::FromRows(rows), net,
                                               1.0, 0.1, p, Steps(k), rng,
                                               GateOnly());
  EXPECT_EQ(ErrorKindOf(s.status()), ErrorKind::kTypicalityGateFailed);
  EXPECT_THAT(std::string(s.status().message()), HasSubstr("batch 2"));
}

TEST(PipelineTest, TooFewRows) {
  const AdmissibleParams p = *GaussianParams(0.75, 2, 100);
  const DirectionNet net = *CircleNet(8);
  Rng rng(1);
  auto tiny = PreparedFloatingBodySampler::Create(
      Gaussian(3, 1), net, 1.0, 0.1, p, Steps(5), rng, GateOnly());
  EXPECT_EQ(ErrorKindOf(tiny.status()), ErrorKind::kInsufficientRows);
  // Batches too short for the typical-set window.
  auto short_batches = PreparedFloatingBodySampler::Create(
      Gaussian(600, 1), net, 1.0, 0.1, p, Steps(5), rng, GateOnly());
  EXPECT_EQ(ErrorKindOf(short_batches.status()), ErrorKind::kInsufficientRows);
  // The strict policy asks for the per-call sample size.
  auto strict = PreparedFloatingBodySampler::Create(
      Gaussian(kRows, 1), net, 1.0, 0.1, p, Steps(0), rng);
  EXPECT_EQ(ErrorKindOf(strict.status()), ErrorKind::kInsufficientRows);
}

TEST(PipelineTest, StrictPolicyNeedsKAtLeastD) {
  const AdmissibleParams p = *GaussianParams(0.75, 2, kRows);
  Rng rng(1);
  auto s = PreparedFloatingBodySampler::Create(
      Gaussian(2 * kRows, 1), *CircleNet(8), 1.0, 0.1, p, Steps(1), rng);
  EXPECT_EQ(ErrorKindOf(s.status()), ErrorKind::kKTooSmall);
}

TEST(PipelineTest, CalibratedEpsilonIsTheSmallestMeetingTheTail) {
  TypicalSetConfig cfg;
  cfg.params = *GaussianParams(0.75, 2, kRows);
  cfg.n = kRows;
  cfg.w = RecommendW(16, 2, 0.1);
  const HolderQuerySpec spec{1.0, 1.0, 16, NormKind::kLInf};
  auto eps = CalibrateEpsilon(cfg, spec, 0.1, 0.1);
  ASSERT_TRUE(eps.ok()) << eps.status();
  auto tail_at = [&](double e) {
    return MechanismTail(*MakeMechanismParams(e, cfg, spec), 0.1);
  };
  EXPECT_LE(tail_at(*eps), 0.1);
  EXPECT_GT(tail_at(*eps * (1 - 1e-6)), 0.1);
  // Halving the target accuracy needs more privacy budget.
  auto tighter = CalibrateEpsilon(cfg, spec, 0.05, 0.1);
  ASSERT_TRUE(tighter.ok());
  EXPECT_GT(*tighter, *eps);
  EXPECT_EQ(ErrorKindOf(CalibrateEpsilon(cfg, spec, 0.0, 0.1).status()),
            ErrorKind::kInvalidParams);
}

}  // namespace
}  // namespace floatbody
