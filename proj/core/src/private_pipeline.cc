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

#include "floatbody/private_pipeline.h"

#include <algorithm>
#include <cmath>

#include "floatbody/status.h"

namespace floatbody {
namespace {

// Norm bound for the points handed to the projection oracle: the chain
// stays within R_max + r of the origin up to oracle error, plus one step.
double ProbeNormBound(const AdmissibleParams& p, const LangevinConfig& cfg) {
  return 4.0 * (p.r_max + p.r) + cfg.trunc * std::sqrt(cfg.eta);
}

}  // namespace

absl::StatusOr<double> CalibrateEpsilon(const TypicalSetConfig& cfg,
                                        const HolderQuerySpec& spec,
                                        double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0 && beta < 1.0)) {
    return Error(ErrorKind::kInvalidParams,
                 "calibration needs alpha > 0 and beta in (0, 1)");
  }
  auto tail = [&](double log_eps) -> absl::StatusOr<double> {
    FB_ASSIGN_OR_RETURN(MechanismParams mp,
                        MakeMechanismParams(std::exp(log_eps), cfg, spec));
    return MechanismTail(mp, alpha);
  };
  double lo = std::log(1e-12);
  double hi = std::log(1e18);
  FB_ASSIGN_OR_RETURN(double t_hi, tail(hi));
  if (t_hi > beta) {
    return Error(ErrorKind::kTooLarge, "no epsilon up to 1e18 reaches tail ",
                 beta, " at ", alpha);
  }
  FB_ASSIGN_OR_RETURN(double t_lo, tail(lo));
  if (t_lo <= beta) return std::exp(lo);
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    FB_ASSIGN_OR_RETURN(double t, tail(mid));
    if (t <= beta) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::exp(hi);
}

absl::StatusOr<PreparedFloatingBodySampler> PreparedFloatingBodySampler::Create(
    const Sample& x, const DirectionNet& net, double epsilon, double alpha,
    const AdmissibleParams& p, const LangevinConfig& cfg, Rng& rng,
    const PipelineOptions& opts) {
  FB_RETURN_IF_ERROR(ValidateParams(p));
  if (cfg.k < 0) {
    return Error(ErrorKind::kInvalidParams, "negative Langevin step count");
  }
  const int d = x.d();
  const int64_t batches = cfg.k + 1;
  const int64_t rows = x.n() / batches;
  if (rows < 1) {
    return Error(ErrorKind::kInsufficientRows, x.n(), " rows cannot fill ",
                 batches, " batches");
  }
  if (opts.policy == BatchPolicy::kStrict) {
    double acc = alpha;
    double beta = opts.op.beta;
    if (cfg.k > 0) {
      FB_ASSIGN_OR_RETURN(NoisyOracleParams op,
                          MakeNoisyOracleParams(alpha, cfg.k, d, p));
      acc = op.alpha_tilde;
      beta = op.beta;
    }
    HolderQuerySpec steiner{1.0, SteinerHolderConstant(d, p), d, NormKind::kL2};
    FB_ASSIGN_OR_RETURN(int64_t need, SampleSize(acc, beta, epsilon, steiner, d,
                                                 net.size(), p, opts.constants));
    if (cfg.k > 0) {
      HolderQuerySpec proj{0.5, ProjectionHolderConstant(ProbeNormBound(p, cfg), p),
                           d, NormKind::kL2};
      FB_ASSIGN_OR_RETURN(int64_t need_proj,
                          SampleSize(acc, beta, epsilon, proj, d, net.size(), p,
                                     opts.constants));
      need = std::max(need, need_proj);
    }
    if (rows < need) {
      return Error(ErrorKind::kInsufficientRows, "each of ", batches,
                   " batches needs ", need, " rows, got ", rows);
    }
  }
  TypicalSetConfig probe;
  probe.params = p;
  probe.n = rows;
  probe.w = opts.op.w > 0.0 ? opts.op.w
                            : RecommendW(net.size(), d, opts.op.beta, opts.op.c_w);
  if (!ValidateTypicalSetConfig(probe).ok()) {
    return Error(ErrorKind::kInsufficientRows, "batches of ", rows,
                 " rows do not exceed 2W/L = ", 2.0 * probe.w / p.l);
  }

  PreparedFloatingBodySampler s;
  s.epsilon_ = epsilon;
  s.params_ = p;
  s.cfg_ = cfg;
  s.opts_ = opts;
  s.d_ = d;
  s.batch_rows_ = rows;
  auto gate_error = [](int64_t b, const absl::Status& st) {
    return Error(ErrorKind::kTypicalityGateFailed, "batch ", b, ": ",
                 st.message());
  };
  {
    auto rel = PrepareSteiner(x.Slice(0, rows), net, epsilon, p, rng, opts.op);
    if (!rel.ok()) {
      if (ErrorKindOf(rel.status()) == ErrorKind::kTypicalityGateFailed) {
        return gate_error(0, rel.status());
      }
      return rel.status();
    }
    s.steiner_ = *std::move(rel);
  }
  for (int64_t b = 1; b <= cfg.k; ++b) {
    Sample batch = x.Slice(b * rows, (b + 1) * rows);
    FB_ASSIGN_OR_RETURN(TypicalSetConfig tc,
                        OpTypicalConfig(rows, d, net.size(), p, opts.op));
    FB_ASSIGN_OR_RETURN(TypicalReport rep, CheckTypical(batch, net, tc));
    if (!rep.pass) {
      return gate_error(b, absl::InvalidArgumentError(rep.first_failure));
    }
    FB_ASSIGN_OR_RETURN(FloatingBodyApprox fb, FloatingBody(batch, p.q, net));
    if (fb.empty || !fb.body.feasible_witness().has_value()) {
      return Error(ErrorKind::kEmptyBody, "batch ", b,
                   ": floating body has no interior");
    }
    s.bodies_.push_back(std::move(fb.body));
    s.configs_.push_back(tc);
  }
  return s;
}

absl::Status PreparedFloatingBodySampler::RegisterBatches(
    PrivacyLedger& ledger) const {
  for (int64_t b = 0; b <= cfg_.k; ++b) {
    FB_RETURN_IF_ERROR(
        ledger.AddBatch(b, b * batch_rows_, (b + 1) * batch_rows_));
  }
  return absl::OkStatus();
}

absl::StatusOr<Point> PreparedFloatingBodySampler::Draw(
    Rng& rng, PrivacyLedger* ledger) const {
  FB_ASSIGN_OR_RETURN(Point x, steiner_.Draw(rng));
  if (ledger != nullptr) {
    FB_RETURN_IF_ERROR(ledger->Charge(steiner_.op, epsilon_, 0));
  }
  for (int64_t t = 1; t <= cfg_.k; ++t) {
    Point y = LangevinIncrement(d_, cfg_, /*truncate=*/true, rng);
    for (int j = 0; j < d_; ++j) y[j] += x[j];
    const Polytope& body = bodies_[t - 1];
    FB_ASSIGN_OR_RETURN(ProjectionResult pr,
                        Project(body, y, opts_.op.projection));
    HolderQuerySpec spec{0.5, ProjectionHolderConstant(Norm2(y), params_), d_,
                         NormKind::kL2};
    FB_ASSIGN_OR_RETURN(MechanismParams mp,
                        MakeMechanismParams(epsilon_, configs_[t - 1], spec));
    FB_ASSIGN_OR_RETURN(x, FlatLaplaceSample(pr.point, mp, rng));
    if (ledger != nullptr) {
      FB_RETURN_IF_ERROR(ledger->Charge("private_project", epsilon_, t));
    }
  }
  return x;
}

absl::StatusOr<PipelineResult> PrivateSampleFloatingBody(
    const Sample& x, const DirectionNet& net, double epsilon, double alpha,
    const AdmissibleParams& p, const LangevinConfig& cfg, Rng& rng,
    const PipelineOptions& opts) {
  FB_ASSIGN_OR_RETURN(PreparedFloatingBodySampler s,
                      PreparedFloatingBodySampler::Create(
                          x, net, epsilon, alpha, p, cfg, rng, opts));
  PipelineResult res;
  FB_RETURN_IF_ERROR(s.RegisterBatches(res.ledger));
  FB_ASSIGN_OR_RETURN(res.point, s.Draw(rng, &res.ledger));
  res.steiner_only = s.steiner_only();
  return res;
}

}  // namespace floatbody
