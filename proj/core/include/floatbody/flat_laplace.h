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

#ifndef FLOATBODY_FLAT_LAPLACE_H_
#define FLOATBODY_FLAT_LAPLACE_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "floatbody/rng.h"
#include "floatbody/typical_set.h"
#include "floatbody/types.h"

namespace floatbody {

// A query that is (h, K)-Hoelder in the floating body, with values in R^M
// measured in the p-norm.
struct HolderQuerySpec {
  double h = 1.0;
  double k = 1.0;
  int m = 1;
  NormKind p = NormKind::kL2;
};

// Density on the region ||t||_p <= region_radius proportional to
//   exp(-min(slope * ||t - center||_p, cap))
// with
//   slope = (eps/4) (L n / 2W)^h / K,
//   cap = (eps/4) (L n min(r, R_min) / 8W)^h,
//   region_radius = 2 K (R_max + r/2).
struct MechanismParams {
  double epsilon = 1.0;
  HolderQuerySpec query;
  TypicalSetConfig cfg;
  double slope = 0.0;
  double cap = 0.0;
  double region_radius = 0.0;
};

absl::StatusOr<MechanismParams> MakeMechanismParams(
    double epsilon, const TypicalSetConfig& cfg, const HolderQuerySpec& query);

// Unnormalized log density; -infinity outside the region.
double FlatLaplaceLogDensity(const Point& t, const Point& center,
                             const MechanismParams& mp);

// Exact draw: a direction from the cone measure of the unit p-sphere, a
// radius from s^(M-1) exp(-min(slope s, cap)) on [0, R + ||center||_p], and
// rejection against the region. Errors: RejectionStall after 10^6 proposals
// without an acceptance, DimensionMismatch.
absl::StatusOr<Point> FlatLaplaceSample(const Point& center,
                                        const MechanismParams& mp, Rng& rng);

// Direction from the cone measure of the unit p-sphere.
Point ConeDirection(int m, NormKind p, Rng& rng);

// Uniform point in the p-ball of the given radius.
Point UniformPBall(int m, NormKind p, double radius, Rng& rng);

// log volume of the p-ball of the given radius in R^m.
double LogPBallVolume(int m, NormKind p, double radius);

// Radial law with density s^(m-1) exp(-min(slope s, cap)) on [0, s_max].
class RadialLaw {
 public:
  RadialLaw(int m, double slope, double cap, double s_max);
  double Sample(Rng& rng) const;
  // P(S >= s).
  double Tail(double s) const;
  // log of the total unnormalized mass.
  double LogMass() const { return log_total_; }

 private:
  // log of the unnormalized mass on [0, s].
  double LogMassBelow(double s) const;
  double InverseGammaPart(double log_target) const;

  int m_;
  double slope_;
  double cap_;
  double s_max_;
  double s_cap_;  // radius where the cap starts to bind (clipped to s_max)
  double log_gamma_part_;
  double log_flat_part_;
  double log_total_;
};

// P(||noise||_p >= alpha) for the mechanism's radial law, ignoring the
// region (a bound up to the region's acceptance rate).
double MechanismTail(const MechanismParams& mp, double alpha);

// Closed-form normalizer of the M = 1 density centered at c.
double FlatLaplaceNormalizer1D(double c, const MechanismParams& mp);

// Common random numbers for normalizer estimates: points uniform in the
// region, shared across every center audited against them.
struct NormalizerCrn {
  int m = 0;
  NormKind p = NormKind::kL2;
  double region_radius = 0.0;
  double log_volume = 0.0;
  std::vector<double> points;  // row-major, m per point
  size_t size() const { return m == 0 ? 0 : points.size() / m; }
};

NormalizerCrn MakeNormalizerCrn(const MechanismParams& mp, int64_t n_points,
                                uint64_t seed);

// Monte Carlo estimate of log of the integral of exp(log density).
double EstimateLogNormalizer(const Point& center, const MechanismParams& mp,
                             const NormalizerCrn& crn);

// Monte Carlo estimate of log(Z(c1)/Z(c2)) on common random numbers.
double EstimateLogNormalizerRatio(const Point& c1, const Point& c2,
                                  const MechanismParams& mp,
                                  const NormalizerCrn& crn);

struct AuditResult {
  // max over grid points of |log f1 - log f2| - (eps/2) d_H.
  double max_slack = 0.0;
  double log_normalizer_ratio = 0.0;
  size_t points_checked = 0;
  bool pass = true;
};

// Checks the (eps/2)-ratio bound between the normalized mechanism densities
// at two centers on a grid of outputs. Grid points outside the region carry
// no mass under either density and are skipped. Passes iff
// max_slack <= 1e-3.
absl::StatusOr<AuditResult> PrivacyRatioAudit(const Point& c1, const Point& c2,
                                              int64_t d_h,
                                              const MechanismParams& mp,
                                              const std::vector<Point>& grid,
                                              const NormalizerCrn& crn);

}  // namespace floatbody

#endif  // FLOATBODY_FLAT_LAPLACE_H_
