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

#include "floatbody/quantile.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "floatbody/status.h"

namespace floatbody {

int64_t QuantileRank(double q, int64_t n) {
  int64_t k = static_cast<int64_t>(std::ceil(q * static_cast<double>(n)));
  k = std::clamp<int64_t>(k, 1, n);
  auto frac = [n](int64_t j) {
    return static_cast<double>(j) / static_cast<double>(n);
  };
  while (k > 1 && frac(k - 1) >= q) --k;
  while (k < n && frac(k) < q) ++k;
  return k;
}

absl::StatusOr<double> EmpiricalQuantile(std::vector<double>& values,
                                         double q) {
  if (!(q > 0.0 && q < 1.0)) {
    return Error(ErrorKind::kInvalidQuantile, "q = ", q, " is not in (0, 1)");
  }
  if (values.empty()) {
    return Error(ErrorKind::kInvalidQuantile, "quantile of an empty sample");
  }
  const int64_t k = QuantileRank(q, static_cast<int64_t>(values.size()));
  std::nth_element(values.begin(), values.begin() + (k - 1), values.end());
  return values[k - 1];
}

absl::StatusOr<double> QuantileAlong(const Sample& x, const Point& theta,
                                     double q) {
  if (static_cast<int>(theta.size()) != x.d()) {
    return Error(ErrorKind::kDimensionMismatch, "direction has dimension ",
                 theta.size(), ", sample has ", x.d());
  }
  std::vector<double> proj = x.Project(theta);
  return EmpiricalQuantile(proj, q);
}

absl::StatusOr<std::vector<double>> QueryQuantiles(const Sample& x, double q,
                                                   const DirectionNet& net) {
  if (net.dim() != x.d()) {
    return Error(ErrorKind::kDimensionMismatch, "net has dimension ",
                 net.dim(), ", sample has ", x.d());
  }
  std::vector<double> out;
  out.reserve(net.size());
  for (const Point& theta : net.directions()) {
    FB_ASSIGN_OR_RETURN(double v, QuantileAlong(x, theta, q));
    out.push_back(v);
  }
  return out;
}

absl::StatusOr<double> DeltaQ(const Sample& x, const Sample& y, double q,
                              const DirectionNet& net) {
  FB_ASSIGN_OR_RETURN(std::vector<double> qx, QueryQuantiles(x, q, net));
  FB_ASSIGN_OR_RETURN(std::vector<double> qy, QueryQuantiles(y, q, net));
  double worst = 0.0;
  for (size_t i = 0; i < qx.size(); ++i) {
    worst = std::max(worst, std::abs(qx[i] - qy[i]));
  }
  return worst;
}

absl::StatusOr<double> DeltaQToReference(const Sample& x, double q,
                                         const DirectionNet& net,
                                         const std::vector<double>& reference) {
  if (reference.size() != net.size()) {
    return Error(ErrorKind::kSizeMismatch, "one reference value per direction");
  }
  FB_ASSIGN_OR_RETURN(std::vector<double> qx, QueryQuantiles(x, q, net));
  double worst = 0.0;
  for (size_t i = 0; i < qx.size(); ++i) {
    worst = std::max(worst, std::abs(qx[i] - reference[i]));
  }
  return worst;
}

absl::StatusOr<Polytope> PolytopeFromSupport(const DirectionNet& net,
                                             const std::vector<double>& h) {
  if (h.size() != net.size()) {
    return Error(ErrorKind::kSizeMismatch, "one support value per direction");
  }
  std::vector<Halfspace> hs;
  hs.reserve(net.size());
  for (size_t i = 0; i < net.size(); ++i) hs.push_back({net[i], h[i]});
  return Polytope::Create(net.dim(), std::move(hs));
}

absl::StatusOr<FloatingBodyApprox> FloatingBody(const Sample& x, double q,
                                                const DirectionNet& net) {
  FB_ASSIGN_OR_RETURN(std::vector<double> h, QueryQuantiles(x, q, net));
  FB_ASSIGN_OR_RETURN(Polytope body, PolytopeFromSupport(net, h));
  FB_ASSIGN_OR_RETURN(InscribedBall ball, ChebyshevBall(body));
  FloatingBodyApprox out{std::move(body), q, x.SourceHash(), ball, false};
  out.empty = !(ball.lp_radius > 1e-12);
  if (!out.empty) out.body.set_feasible_witness(ball.center);
  return out;
}

absl::StatusOr<DirectionNet> AxisNet(int d) {
  if (d < 1) return Error(ErrorKind::kInvalidParams, "d must be >= 1");
  std::vector<Point> dirs;
  for (int i = 0; i < d; ++i) {
    Point e(d, 0.0);
    e[i] = 1.0;
    dirs.push_back(e);
    e[i] = -1.0;
    dirs.push_back(e);
  }
  return DirectionNet::Create(d, std::move(dirs), NetProvenance::kAxis);
}

absl::StatusOr<DirectionNet> CircleNet(int m, double phase) {
  if (m < 1) return Error(ErrorKind::kEmptyNet, "need m >= 1");
  std::vector<Point> dirs;
  for (int i = 0; i < m; ++i) {
    double a = phase + 2.0 * std::numbers::pi * i / m;
    dirs.push_back({std::cos(a), std::sin(a)});
  }
  return DirectionNet::Create(2, std::move(dirs), NetProvenance::kDeterministic,
                              2.0 * std::sin(std::numbers::pi / (2.0 * m)));
}

absl::StatusOr<DirectionNet> RandomSphereNet(int d, int m, Rng& rng) {
  if (d < 1) return Error(ErrorKind::kInvalidParams, "d must be >= 1");
  if (m < 1) return Error(ErrorKind::kEmptyNet, "need m >= 1");
  if (d == 1) return DirectionNet::Create(1, {{1.0}, {-1.0}});
  std::vector<Point> dirs;
  dirs.reserve(m);
  for (int i = 0; i < m; ++i) dirs.push_back(rng.UnitSphere(d));
  return DirectionNet::Create(d, std::move(dirs), NetProvenance::kRandom);
}

absl::StatusOr<DirectionNet> DeterministicSphereNet(int d, double gamma) {
  if (!(gamma > 0.0 && gamma <= 2.0)) {
    return Error(ErrorKind::kInvalidParams, "gamma must be in (0, 2]");
  }
  if (d == 1) return DirectionNet::Create(1, {{1.0}, {-1.0}});
  if (d == 2) {
    int m = std::max(
        3, static_cast<int>(std::floor(std::numbers::pi /
                                       std::asin(std::min(1.0, gamma / 2.0)))));
    FB_ASSIGN_OR_RETURN(DirectionNet net, CircleNet(m));
    return DirectionNet::Create(2, net.directions(),
                                NetProvenance::kDeterministic, gamma);
  }
  if (d != 3) {
    return Error(ErrorKind::kInvalidParams,
                 "deterministic nets are provided for d <= 3 only");
  }
  // Fibonacci candidates, then greedy farthest-point selection.
  const int nc = std::max(4000, static_cast<int>(60.0 / (gamma * gamma)));
  std::vector<Point> cand(nc);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < nc; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / nc;
    double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    cand[i] = {rad * std::cos(golden * i), rad * std::sin(golden * i), z};
  }
  std::vector<double> mind(nc, std::numeric_limits<double>::infinity());
  std::vector<Point> net;
  int next = 0;
  while (true) {
    net.push_back(cand[next]);
    int best = -1;
    double best_d = -1.0;
    for (int i = 0; i < nc; ++i) {
      mind[i] = std::min(mind[i], Distance(cand[i], cand[next]));
      if (mind[i] > best_d) {
        best_d = mind[i];
        best = i;
      }
    }
    if (best_d < gamma) break;
    next = best;
  }
  return DirectionNet::Create(3, std::move(net), NetProvenance::kDeterministic,
                              gamma);
}

}  // namespace floatbody
