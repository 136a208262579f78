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

#include "floatbody/admissible.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "floatbody/quantile.h"
#include "floatbody/status.h"

namespace floatbody {
namespace {

constexpr double kDegenerateRmin = 1e-6;

absl::Status CheckQ(double q) {
  if (!(q > 0.5 && q < 1.0)) {
    return Error(ErrorKind::kInvalidQuantile, "q = ", q,
                 " must lie in (1/2, 1)");
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status ValidateParams(const AdmissibleParams& p) {
  if (!(p.q > 0.0 && p.q < 1.0)) {
    return Error(ErrorKind::kInvalidQuantile, "q = ", p.q, " is not in (0, 1)");
  }
  if (!(p.r_min > 0.0) || !(p.r_max >= p.r_min)) {
    return Error(ErrorKind::kInvalidParams, "need 0 < r_min <= r_max, got ",
                 p.r_min, " and ", p.r_max);
  }
  if (!(p.r > 0.0) || !(p.l > 0.0) || !(p.b > 0.0)) {
    return Error(ErrorKind::kInvalidParams, "r, l and b must be positive");
  }
  return absl::OkStatus();
}

absl::StatusOr<AdmissibleParams> LogConcaveParams(double q, int d, int64_t n) {
  FB_RETURN_IF_ERROR(CheckQ(q));
  if (d < 1 || n < 1) {
    return Error(ErrorKind::kInvalidParams, "need d >= 1 and n >= 1");
  }
  AdmissibleParams p;
  p.q = q;
  p.r_min = q - 0.5;
  p.r_max = std::log(1.0 / (2.0 * (1.0 - q)));
  p.r = (1.0 - q) / 2.0;
  p.l = (1.0 - q) / 8.0;
  const double nn = static_cast<double>(n);
  p.b = 10.0 * std::sqrt(static_cast<double>(d)) * nn * nn * nn;
  p.c.assign(d, 0.0);
  p.degenerate = p.r_min < kDegenerateRmin;
  return p;
}

absl::StatusOr<AdmissibleParams> GaussianParams(double q, int d, int64_t n) {
  FB_ASSIGN_OR_RETURN(AdmissibleParams p, LogConcaveParams(q, d, n));
  DistributionSpec spec{DistributionKind::kIsotropicGaussian, d, 0};
  Point e(d, 0.0);
  e[0] = 1.0;
  FB_ASSIGN_OR_RETURN(auto marginal, MakeMarginal(spec, e));
  const double qq = marginal->Quantile(q);
  p.r_min = qq;
  p.r_max = qq;
  p.r = qq;
  p.l = marginal->Density(2.0 * qq);
  p.degenerate = p.r_min < kDegenerateRmin;
  return p;
}

absl::StatusOr<AdmissibilityReport> AdmissibilityCheck(
    const Sample& x, const AdmissibleParams& p, const DirectionNet& net) {
  FB_RETURN_IF_ERROR(ValidateParams(p));
  if (net.dim() != x.d()) {
    return Error(ErrorKind::kDimensionMismatch, "net has dimension ",
                 net.dim(), ", sample has ", x.d());
  }
  if (x.n() < 1) return Error(ErrorKind::kInvalidParams, "empty sample");
  Point c = p.c.empty() ? Point(x.d(), 0.0) : p.c;
  if (static_cast<int>(c.size()) != x.d()) {
    return Error(ErrorKind::kDimensionMismatch, "center has wrong dimension");
  }
  AdmissibilityReport rep;
  rep.directions = net.size();
  const double n = static_cast<double>(x.n());
  const double bin = p.r / 4.0;
  for (size_t k = 0; k < net.size(); ++k) {
    std::vector<double> proj = x.Project(net[k]);
    std::vector<double> sorted = proj;
    std::sort(sorted.begin(), sorted.end());
    const double qv = sorted[QuantileRank(p.q, x.n()) - 1];
    if (std::abs(qv) > p.r_max) {
      rep.violations.push_back({1, k, qv, p.r_max});
      if (std::abs(qv) <= p.r_max + 1.0) rep.gap_directions.push_back(k);
    }
    const double lift = qv - Dot(c, net[k]);
    if (lift < p.r_min) rep.violations.push_back({2, k, lift, p.r_min});
    // Eight bins of width r/4 covering [Q - r, Q + r].
    for (int b = 0; b < 8; ++b) {
      const double lo = qv - p.r + b * bin;
      const double hi = lo + bin;
      auto first = std::lower_bound(sorted.begin(), sorted.end(), lo);
      auto last = std::lower_bound(sorted.begin(), sorted.end(), hi);
      const double dens = static_cast<double>(last - first) / (n * bin);
      if (dens < 0.8 * p.l) {
        rep.violations.push_back({3, k, dens, 0.8 * p.l});
        break;
      }
    }
  }
  for (int64_t i = 0; i < x.n(); ++i) {
    const double norm = Norm2(x.row(i));
    if (norm > p.b) {
      rep.violations.push_back({4, static_cast<size_t>(i), norm, p.b});
    }
  }
  rep.pass = rep.violations.empty();
  return rep;
}

absl::StatusOr<double> DensityFloor(const DistributionSpec& spec,
                                    const Point& theta, double q, double r) {
  FB_RETURN_IF_ERROR(CheckQ(q));
  if (!(r > 0.0)) return Error(ErrorKind::kInvalidParams, "r must be > 0");
  FB_ASSIGN_OR_RETURN(auto marginal, MakeMarginal(spec, theta));
  const double qv = marginal->Quantile(q);
  double floor = std::numeric_limits<double>::infinity();
  constexpr int kPoints = 1000;
  for (int i = 0; i < kPoints; ++i) {
    const double t = qv - r + 2.0 * r * i / (kPoints - 1);
    floor = std::min(floor, marginal->Density(t));
  }
  return floor;
}

absl::StatusOr<std::vector<double>> AnalyticQuantiles(
    const DistributionSpec& spec, const DirectionNet& net, double q) {
  std::vector<double> out;
  out.reserve(net.size());
  for (const Point& theta : net.directions()) {
    FB_ASSIGN_OR_RETURN(auto marginal, MakeMarginal(spec, theta));
    out.push_back(marginal->Quantile(q));
  }
  return out;
}

}  // namespace floatbody
