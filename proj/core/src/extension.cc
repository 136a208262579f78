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

#include "floatbody/extension.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "floatbody/gamma_segment.h"
#include "floatbody/quantile.h"
#include "floatbody/status.h"

namespace floatbody {
namespace {

constexpr int64_t kMaxTuples = 1000000;
constexpr int kAuditPoints = 200;
constexpr double kRatioSlack = 1e-6;
constexpr double kTvTolerance = 1e-8;

absl::Status CheckProbe(const Sample& x, const EnumerableInstance& inst) {
  if (x.d() != 1 || x.n() != inst.n) {
    return Error(ErrorKind::kInvalidProbe, "probe must be ", inst.n,
                 " values in one dimension");
  }
  for (double v : x.data()) {
    if (std::find(inst.grid.begin(), inst.grid.end(), v) == inst.grid.end()) {
      return Error(ErrorKind::kInvalidProbe, "value ", v, " is off the grid");
    }
  }
  return absl::OkStatus();
}

// Fixed composite Gauss-Legendre rule. Used where the integrand is zero up
// to rounding, which no relative tolerance can certify.
double IntegrateComposite(const std::function<double(double)>& f,
                          std::vector<double> breakpoints) {
  static const GaussLegendreRule rule = MakeGaussLegendre(20);
  constexpr int kPanels = 32;
  std::sort(breakpoints.begin(), breakpoints.end());
  double total = 0.0;
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double h = (breakpoints[i + 1] - breakpoints[i]) / kPanels;
    if (!(h > 0.0)) continue;
    for (int p = 0; p < kPanels; ++p) {
      const double mid = breakpoints[i] + (p + 0.5) * h;
      for (size_t k = 0; k < rule.nodes.size(); ++k) {
        total += 0.5 * h * rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
      }
    }
  }
  return total;
}

absl::StatusOr<DirectionNet> PlusMinusNet() {
  return DirectionNet::Create(1, {{1.0}, {-1.0}});
}

double Center(const Sample& x, double q) {
  std::vector<double> v = x.data();
  return *EmpiricalQuantile(v, q);
}

}  // namespace

std::vector<Sample> EnumerateGrid(const EnumerableInstance& inst) {
  const int g = static_cast<int>(inst.grid.size());
  int64_t total = 1;
  for (int i = 0; i < inst.n; ++i) total *= g;
  std::vector<Sample> out;
  out.reserve(total);
  std::vector<int> idx(inst.n, 0);
  for (int64_t c = 0; c < total; ++c) {
    std::vector<double> row(inst.n);
    for (int i = 0; i < inst.n; ++i) row[i] = inst.grid[idx[i]];
    out.emplace_back(inst.n, 1, std::move(row));
    for (int i = inst.n - 1; i >= 0; --i) {
      if (++idx[i] < g) break;
      idx[i] = 0;
    }
  }
  return out;
}

absl::StatusOr<EnumerableInstance> BuildInstance(std::string name,
                                                 std::vector<double> grid,
                                                 int n, double epsilon,
                                                 const TypicalSetConfig& cfg) {
  if (grid.empty() || n < 1 || !(epsilon > 0.0) || cfg.n != n) {
    return Error(ErrorKind::kInvalidParams,
                 "instance needs a grid, n >= 1 matching the config and "
                 "epsilon > 0");
  }
  FB_RETURN_IF_ERROR(ValidateTypicalSetConfig(cfg));
  if (std::pow(static_cast<double>(grid.size()), n) > kMaxTuples) {
    return Error(ErrorKind::kTooLarge, "grid^n exceeds ", kMaxTuples,
                 " tuples");
  }
  EnumerableInstance inst;
  inst.name = std::move(name);
  inst.grid = std::move(grid);
  inst.n = n;
  inst.epsilon = epsilon;
  inst.cfg = cfg;
  FB_ASSIGN_OR_RETURN(DirectionNet net, PlusMinusNet());
  for (Sample& x : EnumerateGrid(inst)) {
    FB_ASSIGN_OR_RETURN(TypicalReport rep, CheckTypical(x, net, cfg));
    if (rep.pass) inst.h_members.push_back(std::move(x));
  }
  if (inst.h_members.empty()) {
    return Error(ErrorKind::kEmptyH, "instance ", inst.name,
                 " has no typical tuple");
  }
  return inst;
}

absl::StatusOr<std::vector<EnumerableInstance>> ShippedInstances() {
  auto config = [](double q, double l, int n) {
    TypicalSetConfig cfg;
    cfg.w = 1.5;
    cfg.n = n;
    cfg.params.q = q;
    cfg.params.l = l;
    cfg.params.r_max = 0.5;
    cfg.params.r = 0.5;
    cfg.params.r_min = 0.25;
    cfg.params.b = 10.0;
    cfg.params.c = {0.0};
    return cfg;
  };
  const std::vector<double> five = {0.0, 0.25, 0.5, 0.75, 1.0};
  const std::vector<double> four = {0.0, 0.25, 0.5, 0.75};
  std::vector<EnumerableInstance> out;
  FB_ASSIGN_OR_RETURN(auto a,
                      BuildInstance("grid5-n4-eps1", five, 4, 1.0,
                                    config(0.75, 1.0, 4)));
  FB_ASSIGN_OR_RETURN(auto b,
                      BuildInstance("grid5-n4-eps4", five, 4, 4.0,
                                    config(0.75, 1.0, 4)));
  FB_ASSIGN_OR_RETURN(auto c,
                      BuildInstance("grid4-n4-eps2", four, 4, 2.0,
                                    config(0.75, 1.0, 4)));
  out.push_back(std::move(a));
  out.push_back(std::move(b));
  out.push_back(std::move(c));
  return out;
}

absl::StatusOr<MechanismParams> InstanceMechanism(
    const EnumerableInstance& inst) {
  return MakeMechanismParams(inst.epsilon, inst.cfg,
                             HolderQuerySpec{1.0, 1.0, 1, NormKind::kL2});
}

double RestrictedDensity(double c, const MechanismParams& mp, double t) {
  if (std::abs(t) > mp.region_radius) return 0.0;
  return std::exp(FlatLaplaceLogDensity({t}, {c}, mp)) /
         FlatLaplaceNormalizer1D(c, mp);
}

double IntegratePiecewise(const std::function<double(double)>& f,
                          const std::vector<double>& breakpoints) {
  std::vector<double> b = breakpoints;
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  double total = 0.0;
  for (size_t i = 0; i + 1 < b.size(); ++i) {
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, b[i], b[i + 1], 15, 1e-12);
  }
  return total;
}

absl::StatusOr<ExtensionDensity> ExtensionDensity::Create(
    const Sample& x, const EnumerableInstance& inst) {
  if (inst.h_members.empty()) return Error(ErrorKind::kEmptyH, "H is empty");
  FB_RETURN_IF_ERROR(CheckProbe(x, inst));
  ExtensionDensity ext;
  FB_ASSIGN_OR_RETURN(ext.mp_, InstanceMechanism(inst));
  const double q = inst.cfg.params.q;
  const double half_eps = inst.epsilon / 2.0;
  std::map<double, double> best;
  for (const Sample& m : inst.h_members) {
    FB_ASSIGN_OR_RETURN(int64_t dh, HammingDistance(x, m));
    const double c = Center(m, q);
    const double ls = half_eps * static_cast<double>(dh) -
                      std::log(FlatLaplaceNormalizer1D(c, ext.mp_));
    auto it = best.find(c);
    if (it == best.end() || ls < it->second) best[c] = ls;
  }
  const double rho = ext.mp_.region_radius;
  const double s_cap = ext.mp_.cap / ext.mp_.slope;
  ext.breaks_ = {-rho, rho};
  for (const auto& [c, ls] : best) {
    ext.centers_.push_back(c);
    ext.log_scale_.push_back(ls);
    for (double t : {c - s_cap, c, c + s_cap}) {
      if (t > -rho && t < rho) ext.breaks_.push_back(t);
    }
  }
  std::sort(ext.breaks_.begin(), ext.breaks_.end());
  ext.breaks_.erase(std::unique(ext.breaks_.begin(), ext.breaks_.end()),
                    ext.breaks_.end());
  ext.z_ = 1.0;
  ext.z_ = IntegratePiecewise([&ext](double t) { return ext.Unnormalized(t); },
                              ext.breaks_);
  return ext;
}

double ExtensionDensity::Unnormalized(double t) const {
  if (std::abs(t) > mp_.region_radius) return 0.0;
  double lo = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < centers_.size(); ++j) {
    const double dist = std::abs(t - centers_[j]);
    lo = std::min(lo, log_scale_[j] - std::min(mp_.slope * dist, mp_.cap));
  }
  return std::exp(lo);
}

absl::StatusOr<double> ExtensionLipschitzConstant(
    const EnumerableInstance& inst) {
  if (inst.h_members.empty()) return Error(ErrorKind::kEmptyH, "H is empty");
  FB_ASSIGN_OR_RETURN(MechanismParams mp, InstanceMechanism(inst));
  double z_min = std::numeric_limits<double>::infinity();
  for (const Sample& m : inst.h_members) {
    z_min = std::min(z_min,
                     FlatLaplaceNormalizer1D(Center(m, inst.cfg.params.q), mp));
  }
  return std::exp(inst.epsilon * inst.n / 2.0) * mp.slope / z_min;
}

absl::StatusOr<ExtensionAuditReport> ExtensionAudit(
    const EnumerableInstance& inst, const std::vector<Sample>& probes) {
  for (const Sample& x : probes) FB_RETURN_IF_ERROR(CheckProbe(x, inst));
  FB_ASSIGN_OR_RETURN(MechanismParams mp, InstanceMechanism(inst));
  const double rho = mp.region_radius;
  const GaussLegendreRule rule = MakeGaussLegendre(kAuditPoints);
  std::vector<double> pts(kAuditPoints);
  for (int i = 0; i < kAuditPoints; ++i) pts[i] = rho * rule.nodes[i];

  ExtensionAuditReport rep;
  rep.probes = probes.size();
  rep.max_ratio_slack = -std::numeric_limits<double>::infinity();
  rep.max_tv = 0.0;
  std::vector<std::vector<double>> log_f(probes.size());
  const double q = inst.cfg.params.q;
  for (size_t i = 0; i < probes.size(); ++i) {
    FB_ASSIGN_OR_RETURN(ExtensionDensity ext,
                        ExtensionDensity::Create(probes[i], inst));
    log_f[i].resize(kAuditPoints);
    for (int k = 0; k < kAuditPoints; ++k) {
      log_f[i][k] = std::log(ext(pts[k]));
    }
    const bool member =
        std::any_of(inst.h_members.begin(), inst.h_members.end(),
                    [&](const Sample& m) { return m.data() == probes[i].data(); });
    if (member) {
      const double c = Center(probes[i], q);
      std::vector<double> br = ext.breakpoints();
      const double s_cap = mp.cap / mp.slope;
      for (double t : {c - s_cap, c, c + s_cap}) {
        if (t > -rho && t < rho) br.push_back(t);
      }
      const double tv =
          0.5 * IntegrateComposite(
                    [&](double t) {
                      return std::abs(ext(t) - RestrictedDensity(c, mp, t));
                    },
                    br);
      rep.max_tv = std::max(rep.max_tv, tv);
      ++rep.members_checked;
    }
  }
  for (size_t i = 0; i < probes.size(); ++i) {
    for (size_t j = 0; j < probes.size(); ++j) {
      if (i == j) continue;
      FB_ASSIGN_OR_RETURN(int64_t dh, HammingDistance(probes[i], probes[j]));
      const double budget = inst.epsilon * static_cast<double>(dh);
      for (int k = 0; k < kAuditPoints; ++k) {
        rep.max_ratio_slack =
            std::max(rep.max_ratio_slack, log_f[i][k] - log_f[j][k] - budget);
      }
      ++rep.pairs;
    }
  }
  if (rep.pairs == 0) rep.max_ratio_slack = 0.0;
  rep.pass = rep.max_ratio_slack <= kRatioSlack && rep.max_tv <= kTvTolerance;
  return rep;
}

}  // namespace floatbody
