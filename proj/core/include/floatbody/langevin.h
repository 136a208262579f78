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

#ifndef FLOATBODY_LANGEVIN_H_
#define FLOATBODY_LANGEVIN_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "absl/status/statusor.h"
#include "floatbody/admissible.h"
#include "floatbody/geometry.h"
#include "floatbody/rng.h"
#include "floatbody/types.h"

namespace floatbody {

struct LangevinConfig {
  double eta = 0.0;
  int64_t k = 0;
  // Radius of the truncated Gaussian steps of the noisy chain.
  double trunc = 0.0;
  double c_eta = 0.5;
  double c_k = 2.0;
  double alpha = 0.0;
  // Also truncate the steps of the exact chain (used when coupling it with a
  // noisy chain on the same noise stream).
  bool truncate_exact = false;
};

// eta = c_eta R_min^2 / (R_max + 1)^4 * alpha^2 / d,
// k = ceil(c_k (R_max + 1)^6 / R_min^2 * d / alpha^2),
// trunc = TruncationRadius(d, k).
absl::StatusOr<LangevinConfig> MakeLangevinConfig(const AdmissibleParams& p,
                                                  int d, double alpha,
                                                  double c_eta = 0.5,
                                                  double c_k = 2.0);

// sqrt(d) log(d k), floored at sqrt(d) so tiny chains keep a usable radius.
double TruncationRadius(int d, int64_t k);

// Standard Gaussian conditioned on norm <= radius, by rejection.
Point TruncatedGaussian(int d, double radius, Rng& rng);

// The Gaussian increment of one step. Its scale is sqrt(eta) per
// coordinate, so k steps diffuse over a distance of order sqrt(k eta).
Point LangevinIncrement(int d, const LangevinConfig& cfg, bool truncate,
                        Rng& rng);

// X_{t+1} = P_K(X_t + sqrt(eta) g_t) for k steps from start.
absl::StatusOr<Point> LangevinChain(const Polytope& body, const Point& start,
                                    const LangevinConfig& cfg, Rng& rng,
                                    const ProjectionOptions& opts = {});

// n_out independent chains started at the Steiner point of the body, each on
// its own sub-stream of rng.
absl::StatusOr<std::vector<Point>> LangevinUniform(
    const Polytope& body, const LangevinConfig& cfg, Rng& rng, int n_out,
    int steiner_directions = 256, const ProjectionOptions& opts = {});

struct NoisyOracleParams {
  double alpha_tilde = 0.0;
  double beta = 0.0;
  double r = 0.0;
};

// alpha~ = d alpha / (32 k (R_max + 1)),
// beta = d^2 alpha^2 / (2^14 k^2 (R_max + 1)^2 (R_max + r)^2),
// R = 4 (R_max + r). Errors: KTooSmall when k < d.
absl::StatusOr<NoisyOracleParams> MakeNoisyOracleParams(
    double alpha, int64_t k, int d, const AdmissibleParams& p);

// Oracles consulted by the noisy chain. The step index is 1-based.
using ProjectionOracle =
    std::function<absl::StatusOr<Point>(const Point& x, int64_t step)>;
using SteinerOracle = std::function<absl::StatusOr<Point>()>;

// X~_{t+1} = P~(X~_t + sqrt(eta) g~_t) from X~_0 = S~ with truncated
// Gaussian steps drawn from rng. Errors: OracleFailure carrying the step.
absl::StatusOr<Point> NoisyLangevin(const ProjectionOracle& project,
                                    const SteinerOracle& steiner,
                                    const LangevinConfig& cfg, int d,
                                    Rng& rng);

// An (alpha~, beta, R) oracle built from an exact answer: with probability
// 1 - beta the answer moves uniformly within alpha~, otherwise it lands
// exactly R away in a uniform direction.
Point PerturbLikeOracle(const Point& exact, const NoisyOracleParams& op,
                        Rng& rng);

// Mean-square trajectory gap bound between the exact and the noisy chain:
// (k + 1)(R^2 beta + alpha~^2 + 4 R_max sqrt(R^2 beta + alpha~^2)) + step^2,
// where step^2 = eta is the per-coordinate variance of one increment.
double CouplingGapBound(const NoisyOracleParams& op, const LangevinConfig& cfg,
                        const AdmissibleParams& p);

}  // namespace floatbody

#endif  // FLOATBODY_LANGEVIN_H_
