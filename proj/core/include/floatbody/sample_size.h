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

#ifndef FLOATBODY_SAMPLE_SIZE_H_
#define FLOATBODY_SAMPLE_SIZE_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "floatbody/admissible.h"
#include "floatbody/flat_laplace.h"

namespace floatbody {

// Leading constants of the three terms. The defaults for the privacy and
// cap terms unfold the mechanism: its slope is eps L n / (8W) and its cap is
// eps L n min(r, R_min) / (32W), so constants of 1 undershoot both.
struct SampleSizeConstants {
  double c_stat = 1.0;
  double c_priv = 8.0;
  double c_cap = 32.0;
  double c_w = 4.0;
};

struct SampleSizeTerms {
  double statistical = 0.0;
  double privacy = 0.0;
  double cap = 0.0;
  double w = 0.0;
  int64_t n = 0;
};

// Three-term bound
//   c_stat K^{2/h} (d + log(4/beta)) / (alpha^{2/h} L^2)
// + c_priv W K^{1/h} (log(1/beta)^{1/h} + (M log M)^{1/h})
//     / ((eps alpha)^{1/h} L)
// + c_cap W M^{1/h} log((R_max + r)/alpha + 1)^{1/h}
//     / ((eps min(r, R_min))^{1/h} L)
// with W = RecommendW(net_size, d, beta, c_w). Errors: AlphaTooLarge when
// alpha >= min(1, K) min(r, R_min) / 2, InvalidParams.
absl::StatusOr<SampleSizeTerms> SampleSizeBreakdown(
    double alpha, double beta, double epsilon, const HolderQuerySpec& spec,
    int d, size_t net_size, const AdmissibleParams& p,
    const SampleSizeConstants& c = {});

absl::StatusOr<int64_t> SampleSize(double alpha, double beta, double epsilon,
                                   const HolderQuerySpec& spec, int d,
                                   size_t net_size, const AdmissibleParams& p,
                                   const SampleSizeConstants& c = {});

}  // namespace floatbody

#endif  // FLOATBODY_SAMPLE_SIZE_H_
