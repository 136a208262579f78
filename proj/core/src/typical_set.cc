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

#include "floatbody/typical_set.h"

#include <algorithm>
#include <cmath>

#include "floatbody/quantile.h"
#include "floatbody/status.h"

namespace floatbody {
namespace {

constexpr double kSlack = 1e-12;

}  // namespace

absl::Status ValidateTypicalSetConfig(const TypicalSetConfig& cfg) {
  FB_RETURN_IF_ERROR(ValidateParams(cfg.params));
  if (!(cfg.w > 1.0)) {
    return Error(ErrorKind::kInvalidParams, "W = ", cfg.w, " must exceed 1");
  }
  if (!(static_cast<double>(cfg.n) > 2.0 * cfg.w / cfg.params.l)) {
    return Error(ErrorKind::kInvalidParams, "n = ", cfg.n,
                 " must exceed 2W/L = ", 2.0 * cfg.w / cfg.params.l);
  }
  return absl::OkStatus();
}

double RecommendW(size_t net_size, int d, double beta, double c_w) {
  const double log_a = std::log(static_cast<double>(std::max<size_t>(net_size, 1)));
  return c_w * (std::min(log_a, static_cast<double>(d)) + std::log(1.0 / beta));
}

int64_t KappaMax(const TypicalSetConfig& cfg) {
  const double v = cfg.params.l * cfg.params.r / (2.0 * cfg.w) *
                   static_cast<double>(cfg.n);
  // Guard against 2.9999999 style rounding of exact integers.
  return static_cast<int64_t>(std::floor(v + 1e-9));
}

absl::StatusOr<DirectionCheck> CheckDirection(const Sample& x,
                                              const Point& theta,
                                              const TypicalSetConfig& cfg) {
  FB_RETURN_IF_ERROR(ValidateTypicalSetConfig(cfg));
  if (static_cast<int>(theta.size()) != x.d()) {
    return Error(ErrorKind::kDimensionMismatch, "direction has dimension ",
                 theta.size(), ", sample has ", x.d());
  }
  if (x.n() != cfg.n) {
    return Error(ErrorKind::kSizeMismatch, "sample has ", x.n(),
                 " rows, config expects ", cfg.n);
  }
  const AdmissibleParams& p = cfg.params;
  std::vector<double> v = x.Project(theta);
  std::sort(v.begin(), v.end());
  DirectionCheck out;
  const double q = v[QuantileRank(p.q, x.n()) - 1];
  out.quantile = q;
  out.kappa_max = KappaMax(cfg);
  out.vacuous = out.kappa_max < 1;

  const double bound = p.r_max + p.r / 2.0;
  if (q < -bound - kSlack || q > bound + kSlack) {
    out.pass = false;
    out.failed_condition = "quantile-bound";
    return out;
  }
  if (v.back() > p.b) {
    out.pass = false;
    out.failed_condition = "norm-bound";
    return out;
  }

  const double w = cfg.w / (p.l * static_cast<double>(cfg.n));
  const double tol = kSlack * std::max(1.0, std::abs(q));
  // Projections equal to Q sit at [lo_q, hi_q).
  const auto lo_q = std::lower_bound(v.begin(), v.end(), q - tol);
  const auto hi_q = std::upper_bound(v.begin(), v.end(), q + tol);
  auto right = hi_q;
  auto left = lo_q;
  for (int64_t kappa = 1; kappa <= out.kappa_max; ++kappa) {
    const double reach = kappa * w;
    while (right != v.end() && *right <= q + reach + tol) ++right;
    while (left != v.begin() && *(left - 1) >= q - reach - tol) --left;
    const int64_t right_count = right - lo_q;
    const int64_t left_count = hi_q - left;
    if (right_count < kappa + 1) {
      out.pass = false;
      out.failing_kappa = kappa;
      out.failed_condition = "right-count";
      return out;
    }
    if (left_count < kappa + 1) {
      out.pass = false;
      out.failing_kappa = kappa;
      out.failed_condition = "left-count";
      return out;
    }
  }
  return out;
}

absl::StatusOr<TypicalReport> CheckTypical(const Sample& x,
                                           const DirectionNet& net,
                                           const TypicalSetConfig& cfg) {
  if (net.size() == 0) return Error(ErrorKind::kEmptyNet, "empty net");
  if (net.dim() != x.d()) {
    return Error(ErrorKind::kDimensionMismatch, "net has dimension ",
                 net.dim(), ", sample has ", x.d());
  }
  TypicalReport rep;
  rep.vacuous = KappaMax(cfg) < 1;
  for (size_t i = 0; i < net.size(); ++i) {
    FB_ASSIGN_OR_RETURN(DirectionCheck dc, CheckDirection(x, net[i], cfg));
    if (!dc.pass) {
      ++rep.failed_directions;
      if (rep.first_failure.empty()) {
        rep.first_failure = absl::StrCat("direction ", i, ": ",
                                         dc.failed_condition);
        if (dc.failing_kappa > 0) {
          absl::StrAppend(&rep.first_failure, " at kappa ", dc.failing_kappa);
        }
      }
    }
    rep.directions.push_back(std::move(dc));
  }
  auto body = FloatingBody(x, cfg.params.q, net);
  if (body.ok()) {
    rep.ball = body->ball;
    rep.ball_pass = !body->ball.empty &&
                    body->ball.radius >= cfg.params.r_min / 2.0 - 1e-9;
  } else if (ErrorKindOf(body.status()) == ErrorKind::kUnbounded) {
    rep.ball_pass = false;
  } else {
    return body.status();
  }
  if (!rep.ball_pass && rep.first_failure.empty()) {
    rep.first_failure = absl::StrCat("inscribed radius ", rep.ball.radius,
                                     " below R_min/2 = ",
                                     cfg.params.r_min / 2.0);
  }
  rep.pass = rep.failed_directions == 0 && rep.ball_pass;
  return rep;
}

double SensitivityBound(const TypicalSetConfig& cfg, int64_t d_h) {
  return 2.0 * cfg.w / (cfg.params.l * static_cast<double>(cfg.n)) *
         static_cast<double>(d_h);
}

}  // namespace floatbody
