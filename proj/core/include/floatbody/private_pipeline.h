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

#ifndef FLOATBODY_PRIVATE_PIPELINE_H_
#define FLOATBODY_PRIVATE_PIPELINE_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "floatbody/langevin.h"
#include "floatbody/ledger.h"
#include "floatbody/private_ops.h"
#include "floatbody/sample_size.h"

namespace floatbody {

enum class BatchPolicy {
  // Every batch must hold the per-call sample size for the noisy-oracle
  // accuracy (alpha~, beta).
  kStrict,
  // Batches only need to pass the typicality gate.
  kGateOnly,
};

struct PipelineOptions {
  PrivateOpOptions op;
  BatchPolicy policy = BatchPolicy::kStrict;
  SampleSizeConstants constants;
};

// Smallest epsilon (to 1e-9 relative) at which the mechanism's radial tail
// at alpha is at most beta. Errors: InvalidParams, TooLarge when even
// epsilon = 1e18 misses.
absl::StatusOr<double> CalibrateEpsilon(const TypicalSetConfig& cfg,
                                        const HolderQuerySpec& spec,
                                        double alpha, double beta);

// The private floating-body sampler with its batches prepared: rows are
// split into k + 1 disjoint batches, batch 0 feeds the private Steiner start
// and batch t the private projection of step t. Draw() runs one chain with
// fresh noise.
class PreparedFloatingBodySampler {
 public:
  // Errors: InsufficientRows, TypicalityGateFailed (message names the
  // batch), EmptyBody, KTooSmall (strict policy with 0 < k < d).
  static absl::StatusOr<PreparedFloatingBodySampler> Create(
      const Sample& x, const DirectionNet& net, double epsilon, double alpha,
      const AdmissibleParams& p, const LangevinConfig& cfg, Rng& rng,
      const PipelineOptions& opts = {});

  // Registers every batch with the ledger.
  absl::Status RegisterBatches(PrivacyLedger& ledger) const;

  // One chain. Each call charges epsilon to every batch it touches.
  absl::StatusOr<Point> Draw(Rng& rng, PrivacyLedger* ledger) const;

  // k = 0: the output is the private Steiner point.
  bool steiner_only() const { return cfg_.k == 0; }
  int64_t batch_rows() const { return batch_rows_; }
  int64_t batches() const { return cfg_.k + 1; }
  double epsilon() const { return epsilon_; }
  const LangevinConfig& config() const { return cfg_; }
  const PreparedRelease& steiner() const { return steiner_; }
  // Floating bodies of batches 1..k.
  const std::vector<Polytope>& bodies() const { return bodies_; }

 private:
  PreparedFloatingBodySampler() = default;

  double epsilon_ = 0.0;
  AdmissibleParams params_;
  LangevinConfig cfg_;
  PipelineOptions opts_;
  int d_ = 0;
  int64_t batch_rows_ = 0;
  PreparedRelease steiner_;
  std::vector<Polytope> bodies_;
  std::vector<TypicalSetConfig> configs_;
};

struct PipelineResult {
  Point point;
  PrivacyLedger ledger;
  bool steiner_only = false;
};

// One end-to-end private draw.
absl::StatusOr<PipelineResult> PrivateSampleFloatingBody(
    const Sample& x, const DirectionNet& net, double epsilon, double alpha,
    const AdmissibleParams& p, const LangevinConfig& cfg, Rng& rng,
    const PipelineOptions& opts = {});

}  // namespace floatbody

#endif  // FLOATBODY_PRIVATE_PIPELINE_H_
