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

#include <algorithm>
#include <cmath>
#include <limits>

#include "floatbody/status.h"
#include "floatbody/typical_set.h"

namespace floatbody {

absl::StatusOr<SampleSizeTerms> SampleSizeBreakdown(
    double alpha, double beta, double epsilon, const HolderQuerySpec& spec,
    int d, size_t net_size, const AdmissibleParams& p,
    const SampleSizeConstants& c) {
  FB_RETURN_IF_ERROR(ValidateParams(p));
  if (!(beta > 0.0 && beta < 1.0) || !(epsilon > 0.0) || !(alpha > 0.0) ||
      d < 1 || spec.m < 1 || !(spec.k > 0.0) ||
      !(spec.h > 0.0 && spec.h <= 1.0)) {
    return Error(ErrorKind::kInvalidParams,
                 "sample size needs alpha, eps > 0, beta in (0, 1), d, M >= 1 "
                 "and h in (0, 1]");
  }
  const double rmin = std::min(p.r, p.r_min);
  const double alpha_max = std::min(1.0, spec.k) * rmin / 2.0;
  if (alpha >= alpha_max) {
    return Error(ErrorKind::kAlphaTooLarge, "alpha = ", alpha,
                 " must be below min(1, K) min(r, R_min) / 2 = ", alpha_max);
  }
  const double inv_h = 1.0 / spec.h;
  const double m = static_cast<double>(spec.m);
  SampleSizeTerms t;
  t.w = RecommendW(net_size, d, beta, c.c_w);
  t.statistical = c.c_stat * std::pow(spec.k, 2.0 * inv_h) *
                  (d + std::log(4.0 / beta)) /
                  (std::pow(alpha, 2.0 * inv_h) * p.l * p.l);
  // The privacy and cap terms carry the logarithms that the tail bound of
  // the mechanism needs: M log M for the radial mass near the center and
  // log((R_max + r) / alpha + 1) for the flat part of the region.
  t.privacy = c.c_priv * t.w * std::pow(spec.k, inv_h) *
              (std::pow(std::log(1.0 / beta), inv_h) +
               std::pow(m * std::log(m), inv_h)) /
              (std::pow(epsilon * alpha, inv_h) * p.l);
  t.cap = c.c_cap * t.w * std::pow(m, inv_h) *
          std::pow(std::log((p.r_max + p.r) / alpha + 1.0), inv_h) /
          (std::pow(epsilon * rmin, inv_h) * p.l);
  const double total = t.statistical + t.privacy + t.cap;
  if (!(total < 9e18)) {
    return Error(ErrorKind::kTooLarge, "sample size ", total,
                 " overflows a 64-bit count");
  }
  t.n = static_cast<int64_t>(std::ceil(total));
  return t;
}

absl::StatusOr<int64_t> SampleSize(double alpha, double beta, double epsilon,
                                   const HolderQuerySpec& spec, int d,
                                   size_t net_size, const AdmissibleParams& p,
                                   const SampleSizeConstants& c) {
  FB_ASSIGN_OR_RETURN(SampleSizeTerms t,
                      SampleSizeBreakdown(alpha, beta, epsilon, spec, d,
                                          net_size, p, c));
  return t.n;
}

}  // namespace floatbody
