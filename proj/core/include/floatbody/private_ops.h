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

#ifndef FLOATBODY_PRIVATE_OPS_H_
#define FLOATBODY_PRIVATE_OPS_H_

#include <string>

#include "absl/status/statusor.h"
#include "floatbody/flat_laplace.h"
#include "floatbody/geometry.h"
#include "floatbody/ledger.h"
#include "floatbody/quantile.h"
#include "floatbody/rng.h"
#include "floatbody/typical_set.h"
#include "floatbody/types.h"

namespace floatbody {

struct PrivateOpOptions {
  // Typical-set width; 0 picks RecommendW(|A|, d, beta, c_w).
  double w = 0.0;
  double beta = 0.1;
  double c_w = 4.0;
  // Monte Carlo directions of the Steiner point.
  int steiner_directions = 256;
  ProjectionOptions projection;
};

// Everything a release needs except the noise: the non-private center and
// the calibrated mechanism. Draw() may be called repeatedly; each draw is a
// separate release and must be charged separately.
struct PreparedRelease {
  std::string op;
  Point center;
  MechanismParams mp;
  TypicalReport gate;

  absl::StatusOr<Point> Draw(Rng& rng) const {
    return FlatLaplaceSample(center, mp, rng);
  }
};

// Typical-set configuration used by the private ops for an n-row sample.
absl::StatusOr<TypicalSetConfig> OpTypicalConfig(int64_t n, int d,
                                                 size_t net_size,
                                                 const AdmissibleParams& p,
                                                 const PrivateOpOptions& opts);

// Hoelder constants of the Steiner point and of the projection of x.
double SteinerHolderConstant(int d, const AdmissibleParams& p);
double ProjectionHolderConstant(double x_norm, const AdmissibleParams& p);

// Quantile vector over A: h = 1, K = 1, M = |A|, p = infinity.
absl::StatusOr<PreparedRelease> PrepareQuantiles(
    const Sample& x, const DirectionNet& net, double epsilon,
    const AdmissibleParams& p, const PrivateOpOptions& opts = {});

// Steiner point of the floating body over A: h = 1, M = d, p = 2,
// K = 6 sqrt(d) (R_max + r) / R_min.
absl::StatusOr<PreparedRelease> PrepareSteiner(
    const Sample& x, const DirectionNet& net, double epsilon,
    const AdmissibleParams& p, Rng& rng, const PrivateOpOptions& opts = {});

// Projection of point onto the floating body over A: h = 1/2, M = d, p = 2,
// K = 5 sqrt((|x| + R_max + r)(R_max + r) / R_min).
absl::StatusOr<PreparedRelease> PrepareProject(
    const Sample& x, const DirectionNet& net, const Point& point,
    double epsilon, const AdmissibleParams& p,
    const PrivateOpOptions& opts = {});

// One-shot releases. Errors: TypicalityGateFailed when X is outside the
// typical set, EmptyBody, plus whatever the building blocks report. The
// ledger, if given, is charged epsilon on the given batch.
absl::StatusOr<Point> PrivateQuantiles(const Sample& x, const DirectionNet& net,
                                       double epsilon,
                                       const AdmissibleParams& p, Rng& rng,
                                       PrivacyLedger* ledger = nullptr,
                                       int64_t batch = 0,
                                       const PrivateOpOptions& opts = {});

absl::StatusOr<Point> PrivateSteiner(const Sample& x, const DirectionNet& net,
                                     double epsilon, const AdmissibleParams& p,
                                     Rng& rng, PrivacyLedger* ledger = nullptr,
                                     int64_t batch = 0,
                                     const PrivateOpOptions& opts = {});

absl::StatusOr<Point> PrivateProject(const Sample& x, const DirectionNet& net,
                                     const Point& point, double epsilon,
                                     const AdmissibleParams& p, Rng& rng,
                                     PrivacyLedger* ledger = nullptr,
                                     int64_t batch = 0,
                                     const PrivateOpOptions& opts = {});

}  // namespace floatbody

#endif  // FLOATBODY_PRIVATE_OPS_H_
