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

#ifndef FLOATBODY_ADMISSIBLE_H_
#define FLOATBODY_ADMISSIBLE_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "floatbody/distribution.h"
#include "floatbody/types.h"

namespace floatbody {

// Admissibility parameters of a law at level q: directional quantiles lie in
// [-r_max, r_max] and at least r_min above <c, theta>, the marginal density is
// at least l on the r-window around each quantile, and rows are bounded by b.
struct AdmissibleParams {
  double q = 0.75;
  double r_max = 1.0;
  double r_min = 0.5;
  double r = 0.1;
  double l = 0.1;
  double b = 1e12;
  Point c;
  // r_min is numerically zero (q too close to 1/2).
  bool degenerate = false;
};

absl::Status ValidateParams(const AdmissibleParams& p);

// Parameters that hold for every isotropic log-concave law:
// r_min = q - 1/2, r_max = log(1/(2(1-q))), r = (1-q)/2, l = (1-q)/8,
// b = 10 sqrt(d) n^3, c = 0.
absl::StatusOr<AdmissibleParams> LogConcaveParams(double q, int d, int64_t n);

// Tight parameters for the isotropic Gaussian: r_min = r_max = r = Q_q of
// N(0,1), l = phi(2 Q_q) (the density floor on [0, 2 Q_q]).
absl::StatusOr<AdmissibleParams> GaussianParams(double q, int d, int64_t n);

struct ConditionViolation {
  int condition = 0;  // 1..4
  size_t direction = 0;
  double value = 0.0;
  double bound = 0.0;
};

struct AdmissibilityReport {
  bool pass = true;
  std::vector<ConditionViolation> violations;
  // Directions whose quantile lies in (r_max, r_max + 1]: outside the
  // log-concave r_max but inside the looser quantile bound with the +1.
  std::vector<size_t> gap_directions;
  size_t directions = 0;
};

// Empirical check of the four conditions along every net direction. The
// density condition uses a histogram with bin width r/4 over the r-window
// and a 0.8 l threshold.
absl::StatusOr<AdmissibilityReport> AdmissibilityCheck(
    const Sample& x, const AdmissibleParams& p, const DirectionNet& net);

// Minimum of the analytic marginal density over [Q_q - r, Q_q + r] on 1000
// evenly spaced points.
absl::StatusOr<double> DensityFloor(const DistributionSpec& spec,
                                    const Point& theta, double q, double r);

// Analytic directional quantiles of the law along the net.
absl::StatusOr<std::vector<double>> AnalyticQuantiles(
    const DistributionSpec& spec, const DirectionNet& net, double q);

}  // namespace floatbody

#endif  // FLOATBODY_ADMISSIBLE_H_
