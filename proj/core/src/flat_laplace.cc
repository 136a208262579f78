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

#include "floatbody/flat_laplace.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "floatbody/gamma_segment.h"
#include "floatbody/status.h"

namespace floatbody {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int64_t kMaxProposals = 1000000;

double LogAddExp(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  const double m = std::max(x, y);
  return m + std::log1p(std::exp(-std::abs(x - y)));
}

// log of the flat-part mass e^{-cap} (hi^m - lo^m) / m for 0 <= lo < hi.
double LogFlatMass(int m, double cap, double lo, double hi) {
  if (!(hi > lo)) return kNegInf;
  const double ratio = lo / hi;
  const double frac =
      ratio > 0.0 ? -std::expm1(m * std::log(ratio)) : 1.0;
  return -cap + m * std::log(hi) + std::log(frac) - std::log(m);
}

}  // namespace

absl::StatusOr<MechanismParams> MakeMechanismParams(
    double epsilon, const TypicalSetConfig& cfg, const HolderQuerySpec& query) {
  FB_RETURN_IF_ERROR(ValidateTypicalSetConfig(cfg));
  if (!(epsilon > 0.0)) {
    return Error(ErrorKind::kInvalidParams, "epsilon must be positive");
  }
  if (!(query.h > 0.0 && query.h <= 1.0) || !(query.k > 0.0) || query.m < 1) {
    return Error(ErrorKind::kInvalidParams,
                 "query needs h in (0, 1], K > 0 and M >= 1");
  }
  const AdmissibleParams& p = cfg.params;
  const double ln = p.l * static_cast<double>(cfg.n);
  MechanismParams mp;
  mp.epsilon = epsilon;
  mp.query = query;
  mp.cfg = cfg;
  mp.slope = epsilon / 4.0 * std::pow(ln / (2.0 * cfg.w), query.h) / query.k;
  mp.cap = epsilon / 4.0 *
           std::pow(ln * std::min(p.r, p.r_min) / (8.0 * cfg.w), query.h);
  mp.region_radius = 2.0 * query.k * (p.r_max + p.r / 2.0);
  return mp;
}

double FlatLaplaceLogDensity(const Point& t, const Point& center,
                             const MechanismParams& mp) {
  if (NormP(t, mp.query.p) > mp.region_radius) return kNegInf;
  const double dist = DistanceP(t, center, mp.query.p);
  return -std::min(mp.slope * dist, mp.cap);
}

Point ConeDirection(int m, NormKind p, Rng& rng) {
  switch (p) {
    case NormKind::kL2:
      return rng.UnitSphere(m);
    case NormKind::kLInf: {
      // Every facet of the cube is equally likely; uniform on the facet.
      Point u(m);
      for (double& v : u) v = 2.0 * rng.Uniform() - 1.0;
      const int64_t face = rng.UniformInt(0, m - 1);
      u[face] = rng.Uniform() < 0.5 ? -1.0 : 1.0;
      return u;
    }
    case NormKind::kL1: {
      // Normalized exponential spacings are uniform on the simplex.
      Point u(m);
      double s = 0.0;
      for (double& v : u) {
        v = rng.Exponential();
        s += v;
      }
      for (double& v : u) {
        v /= s;
        if (rng.Uniform() < 0.5) v = -v;
      }
      return u;
    }
  }
  return Point(m, 0.0);
}

Point UniformPBall(int m, NormKind p, double radius, Rng& rng) {
  Point u = ConeDirection(m, p, rng);
  const double s = radius * std::pow(rng.Uniform(), 1.0 / m);
  for (double& v : u) v *= s;
  return u;
}

double LogPBallVolume(int m, NormKind p, double radius) {
  switch (p) {
    case NormKind::kL2:
      return 0.5 * m * std::log(std::numbers::pi) - std::lgamma(m / 2.0 + 1.0) +
             m * std::log(radius);
    case NormKind::kL1:
      return m * std::log(2.0 * radius) - std::lgamma(m + 1.0);
    case NormKind::kLInf:
      return m * std::log(2.0 * radius);
  }
  return 0.0;
}

RadialLaw::RadialLaw(int m, double slope, double cap, double s_max)
    : m_(m), slope_(slope), cap_(cap), s_max_(s_max) {
  s_cap_ = std::min(cap / slope, s_max);
  log_gamma_part_ =
      s_cap_ > 0.0
          ? -m * std::log(slope) + LogLowerGammaIntegral(m - 1, slope * s_cap_)
          : kNegInf;
  log_flat_part_ = LogFlatMass(m, cap, s_cap_, s_max);
  log_total_ = LogAddExp(log_gamma_part_, log_flat_part_);
}

double RadialLaw::LogMassBelow(double s) const {
  if (s <= 0.0) return kNegInf;
  if (s <= s_cap_) {
    return -m_ * std::log(slope_) + LogLowerGammaIntegral(m_ - 1, slope_ * s);
  }
  return LogAddExp(log_gamma_part_,
                   LogFlatMass(m_, cap_, s_cap_, std::min(s, s_max_)));
}

double RadialLaw::Tail(double s) const {
  if (s <= 0.0) return 1.0;
  if (s >= s_max_) return 0.0;
  double above = kNegInf;
  if (s < s_cap_) {
    auto seg = LogSegmentGammaIntegral(slope_ * s, slope_ * s_cap_, m_ - 1);
    if (seg.ok()) above = -m_ * std::log(slope_) + *seg;
  }
  above = LogAddExp(above, LogFlatMass(m_, cap_, std::max(s, s_cap_), s_max_));
  return std::min(1.0, std::exp(above - log_total_));
}

double RadialLaw::InverseGammaPart(double log_target) const {
  // Bisection on log(x) for x = slope * s in (0, slope * s_cap].
  const double x_hi = slope_ * s_cap_;
  double lo = std::log(x_hi) - 800.0;
  double hi = std::log(x_hi);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi));
       ++it) {
    const double mid = 0.5 * (lo + hi);
    if (LogLowerGammaIntegral(m_ - 1, std::exp(mid)) < log_target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi)) / slope_;
}

double RadialLaw::Sample(Rng& rng) const {
  const double p_gamma = std::exp(log_gamma_part_ - log_total_);
  if (rng.Uniform() < p_gamma) {
    const double log_u = std::log(rng.UniformPositive());
    return InverseGammaPart(log_u + LogLowerGammaIntegral(m_ - 1,
                                                          slope_ * s_cap_));
  }
  const double u = rng.Uniform();
  const double ratio_m = std::pow(s_cap_ / s_max_, m_);
  return s_max_ * std::pow(ratio_m + u * (1.0 - ratio_m), 1.0 / m_);
}

absl::StatusOr<Point> FlatLaplaceSample(const Point& center,
                                        const MechanismParams& mp, Rng& rng) {
  const int m = mp.query.m;
  if (static_cast<int>(center.size()) != m) {
    return Error(ErrorKind::kDimensionMismatch, "center has dimension ",
                 center.size(), ", mechanism expects ", m);
  }
  if (!std::isfinite(mp.slope)) return center;
  const double s_max = mp.region_radius + NormP(center, mp.query.p);
  RadialLaw radial(m, mp.slope, mp.cap, s_max);
  Point t(m);
  for (int64_t proposals = 0; proposals < kMaxProposals; ++proposals) {
    Point u = ConeDirection(m, mp.query.p, rng);
    const double s = radial.Sample(rng);
    for (int i = 0; i < m; ++i) t[i] = center[i] + s * u[i];
    if (NormP(t, mp.query.p) <= mp.region_radius) return t;
  }
  return Error(ErrorKind::kRejectionStall, "no acceptance in ", kMaxProposals,
               " proposals");
}

double MechanismTail(const MechanismParams& mp, double alpha) {
  if (!std::isfinite(mp.slope)) return 0.0;
  RadialLaw radial(mp.query.m, mp.slope, mp.cap, 2.0 * mp.region_radius);
  return radial.Tail(alpha);
}

double FlatLaplaceNormalizer1D(double c, const MechanismParams& mp) {
  const double a = mp.slope;
  const double cap = mp.cap;
  const double rho = mp.region_radius;
  const double s_cap = cap / a;
  auto side = [&](double len) {
    if (len <= 0.0) return 0.0;
    if (len <= s_cap) return -std::expm1(-a * len) / a;
    return -std::expm1(-cap) / a + (len - s_cap) * std::exp(-cap);
  };
  return side(rho - c) + side(rho + c);
}

NormalizerCrn MakeNormalizerCrn(const MechanismParams& mp, int64_t n_points,
                                uint64_t seed) {
  NormalizerCrn crn;
  crn.m = mp.query.m;
  crn.p = mp.query.p;
  crn.region_radius = mp.region_radius;
  crn.log_volume = LogPBallVolume(crn.m, crn.p, crn.region_radius);
  crn.points.reserve(static_cast<size_t>(n_points) * crn.m);
  Rng rng(seed);
  for (int64_t i = 0; i < n_points; ++i) {
    Point u = UniformPBall(crn.m, crn.p, crn.region_radius, rng);
    crn.points.insert(crn.points.end(), u.begin(), u.end());
  }
  return crn;
}

namespace {

// log sum_j exp(-min(a ||t_j - c||, cap)) over the CRN points.
double LogSumKernel(const Point& c, const MechanismParams& mp,
                    const NormalizerCrn& crn) {
  const int m = crn.m;
  const size_t n = crn.size();
  // Every term is at most 1 and at least e^{-cap}: shift by -cap to stay in
  // range whatever the cap.
  double sum = 0.0;
  const double* pts = crn.points.data();
  for (size_t j = 0; j < n; ++j) {
    const double dist =
        DistanceP(std::span<const double>(pts + j * m, m), c, crn.p);
    const double e = std::min(mp.slope * dist, mp.cap);
    sum += std::exp(mp.cap - e);
  }
  return std::log(sum) - mp.cap;
}

}  // namespace

double EstimateLogNormalizer(const Point& center, const MechanismParams& mp,
                             const NormalizerCrn& crn) {
  return crn.log_volume + LogSumKernel(center, mp, crn) -
         std::log(static_cast<double>(crn.size()));
}

double EstimateLogNormalizerRatio(const Point& c1, const Point& c2,
                                  const MechanismParams& mp,
                                  const NormalizerCrn& crn) {
  return LogSumKernel(c1, mp, crn) - LogSumKernel(c2, mp, crn);
}

absl::StatusOr<AuditResult> PrivacyRatioAudit(const Point& c1, const Point& c2,
                                              int64_t d_h,
                                              const MechanismParams& mp,
                                              const std::vector<Point>& grid,
                                              const NormalizerCrn& crn) {
  const int m = mp.query.m;
  if (static_cast<int>(c1.size()) != m || static_cast<int>(c2.size()) != m) {
    return Error(ErrorKind::kDimensionMismatch, "centers must have dimension ",
                 m);
  }
  if (crn.m != m || crn.size() == 0) {
    return Error(ErrorKind::kInvalidParams, "CRN does not match the mechanism");
  }
  AuditResult res;
  res.log_normalizer_ratio = EstimateLogNormalizerRatio(c1, c2, mp, crn);
  const double budget = mp.epsilon / 2.0 * static_cast<double>(d_h);
  res.max_slack = -budget;
  for (const Point& t : grid) {
    if (static_cast<int>(t.size()) != m) {
      return Error(ErrorKind::kDimensionMismatch, "grid point has dimension ",
                   t.size());
    }
    const double l1 = FlatLaplaceLogDensity(t, c1, mp);
    if (l1 == kNegInf) continue;
    const double l2 = FlatLaplaceLogDensity(t, c2, mp);
    const double diff = std::abs(l1 - l2 - res.log_normalizer_ratio);
    res.max_slack = std::max(res.max_slack, diff - budget);
    ++res.points_checked;
  }
  res.pass = res.max_slack <= 1e-3;
  return res;
}

}  // namespace floatbody
