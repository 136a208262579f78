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

#include "floatbody/private_ops.h"

#include <cmath>

#include "floatbody/status.h"

namespace floatbody {
namespace {

absl::StatusOr<TypicalReport> Gate(const Sample& x, const DirectionNet& net,
                                   const TypicalSetConfig& cfg) {
  FB_ASSIGN_OR_RETURN(TypicalReport rep, CheckTypical(x, net, cfg));
  if (!rep.pass) {
    return Error(ErrorKind::kTypicalityGateFailed, rep.first_failure);
  }
  return rep;
}

absl::StatusOr<FloatingBodyApprox> NonEmptyBody(const Sample& x,
                                                const DirectionNet& net,
                                                double q) {
  FB_ASSIGN_OR_RETURN(FloatingBodyApprox fb, FloatingBody(x, q, net));
  if (fb.empty || !fb.body.feasible_witness().has_value()) {
    return Error(ErrorKind::kEmptyBody, "floating body has no interior");
  }
  return fb;
}

absl::StatusOr<Point> ChargeAndDraw(const PreparedRelease& rel, Rng& rng,
                                    PrivacyLedger* ledger, int64_t batch) {
  FB_ASSIGN_OR_RETURN(Point out, rel.Draw(rng));
  if (ledger != nullptr) {
    FB_RETURN_IF_ERROR(ledger->Charge(rel.op, rel.mp.epsilon, batch));
  }
  return out;
}

}  // namespace

absl::StatusOr<TypicalSetConfig> OpTypicalConfig(int64_t n, int d,
                                                 size_t net_size,
                                                 const AdmissibleParams& p,
                                                 const PrivateOpOptions& opts) {
  TypicalSetConfig cfg;
  cfg.params = p;
  cfg.n = n;
  cfg.w = opts.w > 0.0 ? opts.w : RecommendW(net_size, d, opts.beta, opts.c_w);
  FB_RETURN_IF_ERROR(ValidateTypicalSetConfig(cfg));
  return cfg;
}

double SteinerHolderConstant(int d, const AdmissibleParams& p) {
  return 6.0 * std::sqrt(static_cast<double>(d)) * (p.r_max + p.r) / p.r_min;
}

double ProjectionHolderConstant(double x_norm, const AdmissibleParams& p) {
  return 5.0 * std::sqrt((x_norm + p.r_max + p.r) * (p.r_max + p.r) / p.r_min);
}

absl::StatusOr<PreparedRelease> PrepareQuantiles(
    const Sample& x, const DirectionNet& net, double epsilon,
    const AdmissibleParams& p, const PrivateOpOptions& opts) {
  FB_ASSIGN_OR_RETURN(TypicalSetConfig cfg,
                      OpTypicalConfig(x.n(), x.d(), net.size(), p, opts));
  PreparedRelease rel;
  rel.op = "private_quantiles";
  FB_ASSIGN_OR_RETURN(rel.gate, Gate(x, net, cfg));
  FB_ASSIGN_OR_RETURN(std::vector<double> qs, QueryQuantiles(x, p.q, net));
  rel.center = std::move(qs);
  HolderQuerySpec spec{1.0, 1.0, static_cast<int>(net.size()),
                       NormKind::kLInf};
  FB_ASSIGN_OR_RETURN(rel.mp, MakeMechanismParams(epsilon, cfg, spec));
  return rel;
}

absl::StatusOr<PreparedRelease> PrepareSteiner(
    const Sample& x, const DirectionNet& net, double epsilon,
    const AdmissibleParams& p, Rng& rng, const PrivateOpOptions& opts) {
  FB_ASSIGN_OR_RETURN(TypicalSetConfig cfg,
                      OpTypicalConfig(x.n(), x.d(), net.size(), p, opts));
  PreparedRelease rel;
  rel.op = "private_steiner";
  FB_ASSIGN_OR_RETURN(rel.gate, Gate(x, net, cfg));
  FB_ASSIGN_OR_RETURN(FloatingBodyApprox fb, NonEmptyBody(x, net, p.q));
  FB_ASSIGN_OR_RETURN(SteinerEstimate s,
                      SteinerPoint(fb.body, opts.steiner_directions, rng));
  rel.center = std::move(s.point);
  HolderQuerySpec spec{1.0, SteinerHolderConstant(x.d(), p), x.d(),
                       NormKind::kL2};
  FB_ASSIGN_OR_RETURN(rel.mp, MakeMechanismParams(epsilon, cfg, spec));
  return rel;
}

absl::StatusOr<PreparedRelease> PrepareProject(
    const Sample& x, const DirectionNet& net, const Point& point,
    double epsilon, const AdmissibleParams& p, const PrivateOpOptions& opts) {
  if (static_cast<int>(point.size()) != x.d()) {
    return Error(ErrorKind::kDimensionMismatch, "point has dimension ",
                 point.size(), ", sample has ", x.d());
  }
  FB_ASSIGN_OR_RETURN(TypicalSetConfig cfg,
                      OpTypicalConfig(x.n(), x.d(), net.size(), p, opts));
  PreparedRelease rel;
  rel.op = "private_project";
  FB_ASSIGN_OR_RETURN(rel.gate, Gate(x, net, cfg));
  FB_ASSIGN_OR_RETURN(FloatingBodyApprox fb, NonEmptyBody(x, net, p.q));
  FB_ASSIGN_OR_RETURN(ProjectionResult pr,
                      Project(fb.body, point, opts.projection));
  rel.center = std::move(pr.point);
  HolderQuerySpec spec{0.5, ProjectionHolderConstant(Norm2(point), p), x.d(),
                       NormKind::kL2};
  FB_ASSIGN_OR_RETURN(rel.mp, MakeMechanismParams(epsilon, cfg, spec));
  return rel;
}

absl::StatusOr<Point> PrivateQuantiles(const Sample& x, const DirectionNet& net,
                                       double epsilon,
                                       const AdmissibleParams& p, Rng& rng,
                                       PrivacyLedger* ledger, int64_t batch,
                                       const PrivateOpOptions& opts) {
  FB_ASSIGN_OR_RETURN(PreparedRelease rel,
                      PrepareQuantiles(x, net, epsilon, p, opts));
  return ChargeAndDraw(rel, rng, ledger, batch);
}

absl::StatusOr<Point> PrivateSteiner(const Sample& x, const DirectionNet& net,
                                     double epsilon, const AdmissibleParams& p,
                                     Rng& rng, PrivacyLedger* ledger,
                                     int64_t batch,
                                     const PrivateOpOptions& opts) {
  FB_ASSIGN_OR_RETURN(PreparedRelease rel,
                      PrepareSteiner(x, net, epsilon, p, rng, opts));
  return ChargeAndDraw(rel, rng, ledger, batch);
}

absl::StatusOr<Point> PrivateProject(const Sample& x, const DirectionNet& net,
                                     const Point& point, double epsilon,
                                     const AdmissibleParams& p, Rng& rng,
                                     PrivacyLedger* ledger, int64_t batch,
                                     const PrivateOpOptions& opts) {
  FB_ASSIGN_OR_RETURN(PreparedRelease rel,
                      PrepareProject(x, net, point, epsilon, p, opts));
  return ChargeAndDraw(rel, rng, ledger, batch);
}

}  // namespace floatbody
