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

#ifndef FLOATBODY_EXTENSION_H_
#define FLOATBODY_EXTENSION_H_

#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "floatbody/flat_laplace.h"
#include "floatbody/typical_set.h"
#include "floatbody/types.h"

namespace floatbody {

// A 1-D instance small enough to enumerate: samples are n-tuples over a
// finite grid, and H holds every tuple that passes the typicality check
// over the net {+1, -1}. The query is the q-quantile along +1 (h = 1,
// K = 1, M = 1).
struct EnumerableInstance {
  std::string name;
  std::vector<double> grid;
  int n = 0;
  double epsilon = 1.0;
  TypicalSetConfig cfg;
  std::vector<Sample> h_members;
};

// Enumerates grid^n and keeps the typical tuples. Errors: EmptyH,
// InvalidParams, TooLarge (more than 10^6 tuples).
absl::StatusOr<EnumerableInstance> BuildInstance(std::string name,
                                                 std::vector<double> grid,
                                                 int n, double epsilon,
                                                 const TypicalSetConfig& cfg);

// The three instances shipped with the library.
absl::StatusOr<std::vector<EnumerableInstance>> ShippedInstances();

absl::StatusOr<MechanismParams> InstanceMechanism(
    const EnumerableInstance& inst);

// Every n-tuple over the grid, in lexicographic order.
std::vector<Sample> EnumerateGrid(const EnumerableInstance& inst);

// Normalized restricted density of the mechanism centered at c.
double RestrictedDensity(double c, const MechanismParams& mp, double t);

// Density of the extended mechanism on input X:
//   G_X(t) = min over X' in H of exp((eps/2) d_H(X, X')) f_{X'}(t),
//   f_X(t) = G_X(t) / Z_X.
class ExtensionDensity {
 public:
  // Errors: EmptyH, InvalidProbe (X not an n-tuple over the grid).
  static absl::StatusOr<ExtensionDensity> Create(const Sample& x,
                                                 const EnumerableInstance& inst);

  double Unnormalized(double t) const;
  double operator()(double t) const { return Unnormalized(t) / z_; }
  double normalizer() const { return z_; }
  // Breakpoints of G_X inside the region, sorted, ends included.
  const std::vector<double>& breakpoints() const { return breaks_; }

 private:
  ExtensionDensity() = default;

  MechanismParams mp_;
  // One term per distinct member center: the center, its normalizer and the
  // smallest multiplier exp((eps/2) d_H) among members sharing it.
  std::vector<double> centers_;
  std::vector<double> log_scale_;
  std::vector<double> breaks_;
  double z_ = 1.0;
};

// Adaptive Gauss-Kronrod integral of f over [a, b] split at the given
// interior breakpoints.
double IntegratePiecewise(const std::function<double(double)>& f,
                          const std::vector<double>& breakpoints);

// Lipschitz constant of G_X on the region: exp(eps n / 2) slope / Z_min,
// with Z_min the smallest member normalizer.
absl::StatusOr<double> ExtensionLipschitzConstant(
    const EnumerableInstance& inst);

struct ExtensionAuditReport {
  size_t probes = 0;
  size_t pairs = 0;
  size_t members_checked = 0;
  // max over pairs and points of log f_X - log f_Y - eps d_H(X, Y).
  double max_ratio_slack = 0.0;
  // max over H members of TV(extended, restricted).
  double max_tv = 0.0;
  bool pass = true;
};

// Checks the e^{eps d_H} ratio bound between every ordered pair of probes at
// 200 Gauss-Legendre points of the region (slack <= 1e-6) and that the
// extended density equals the restricted one on probes in H (TV <= 1e-8).
// Errors: InvalidProbe.
absl::StatusOr<ExtensionAuditReport> ExtensionAudit(
    const EnumerableInstance& inst, const std::vector<Sample>& probes);

}  // namespace floatbody

#endif  // FLOATBODY_EXTENSION_H_
