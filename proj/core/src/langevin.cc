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

#include "floatbody/langevin.h"

#include <algorithm>
#include <cmath>

#include "floatbody/status.h"

namespace floatbody {

absl::StatusOr<LangevinConfig> MakeLangevinConfig(const AdmissibleParams& p,
                                                  int d, double alpha,
                                                  double c_eta, double c_k) {
  FB_RETURN_IF_ERROR(ValidateParams(p));
  if (d < 1 || !(alpha > 0.0) || !(c_eta > 0.0) || !(c_k > 0.0)) {
    return Error(ErrorKind::kInvalidParams,
                 "Langevin config needs d >= 1 and positive alpha, c_eta, c_k");
  }
  const double dd = static_cast<double>(d);
  const double rp1 = p.r_max + 1.0;
  LangevinConfig cfg;
  cfg.c_eta = c_eta;
  cfg.c_k = c_k;
  cfg.alpha = alpha;
  cfg.eta = c_eta * p.r_min * p.r_min / std::pow(rp1, 4) * alpha * alpha / dd;
  const double k =
      std::ceil(c_k * std::pow(rp1, 6) / (p.r_min * p.r_min) * dd /
                (alpha * alpha));
  if (!(k < 1e12)) {
    return Error(ErrorKind::kTooLarge, "Langevin iteration count ", k);
  }
  cfg.k = std::max<int64_t>(1, static_cast<int64_t>(k));
  cfg.trunc = TruncationRadius(d, cfg.k);
  return cfg;
}

double TruncationRadius(int d, int64_t k) {
  const double dk = static_cast<double>(d) * static_cast<double>(k);
  return std::sqrt(static_cast<double>(d)) * std::max(std::log(dk), 1.0);
}

Point TruncatedGaussian(int d, double radius, Rng& rng) {
  while (true) {
    Point g = rng.Gaussian(d);
    if (Norm2(g) <= radius) return g;
  }
}

Point LangevinIncrement(int d, const LangevinConfig& cfg, bool truncate,
                        Rng& rng) {
  Point g = truncate ? TruncatedGaussian(d, cfg.trunc, rng) : rng.Gaussian(d);
  const double s = std::sqrt(cfg.eta);
  for (double& v : g) v *= s;
  return g;
}

absl::StatusOr<Point> LangevinChain(const Polytope& body, const Point& start,
                                    const LangevinConfig& cfg, Rng& rng,
                                    const ProjectionOptions& opts) {
  const int d = body.dim();
  if (static_cast<int>(start.size()) != d) {
    return Error(ErrorKind::kDimensionMismatch, "start has dimension ",
                 start.size(), ", body has ", d);
  }
  Point x = start;
  for (int64_t t = 0; t < cfg.k; ++t) {
    Point g = LangevinIncrement(d, cfg, cfg.truncate_exact, rng);
    for (int j = 0; j < d; ++j) g[j] += x[j];
    if (body.MaxViolation(g) <= 0.0) {
      x = std::move(g);
      continue;
    }
    FB_ASSIGN_OR_RETURN(ProjectionResult pr, Project(body, g, opts));
    x = std::move(pr.point);
  }
  return x;
}

absl::StatusOr<std::vector<Point>> LangevinUniform(
    const Polytope& body, const LangevinConfig& cfg, Rng& rng, int n_out,
    int steiner_directions, const ProjectionOptions& opts) {
  FB_ASSIGN_OR_RETURN(SteinerEstimate s,
                      SteinerPoint(body, steiner_directions, rng));
  const uint64_t master = rng.NextU64();
  std::vector<Point> out;
  out.reserve(n_out);
  for (int i = 0; i < n_out; ++i) {
    Rng chain_rng(DeriveSeed(master, i));
    FB_ASSIGN_OR_RETURN(Point x,
                        LangevinChain(body, s.point, cfg, chain_rng, opts));
    out.push_back(std::move(x));
  }
  return out;
}

absl::StatusOr<NoisyOracleParams> MakeNoisyOracleParams(
    double alpha, int64_t k, int d, const AdmissibleParams& p) {
  FB_RETURN_IF_ERROR(ValidateParams(p));
  if (k < d) {
    return Error(ErrorKind::kKTooSmall, "k = ", k, " must be at least d = ", d);
  }
  if (!(alpha > 0.0)) {
    return Error(ErrorKind::kInvalidParams, "alpha must be positive");
  }
  const double dd = static_cast<double>(d);
  const double kk = static_cast<double>(k);
  const double rp1 = p.r_max + 1.0;
  const double rr = p.r_max + p.r;
  NoisyOracleParams op;
  op.alpha_tilde = dd * alpha / (32.0 * kk * rp1);
  op.beta = dd * dd * alpha * alpha /
            (16384.0 * kk * kk * rp1 * rp1 * rr * rr);
  op.r = 4.0 * rr;
  return op;
}

absl::StatusOr<Point> NoisyLangevin(const ProjectionOracle& project,
                                    const SteinerOracle& steiner,
                                    const LangevinConfig& cfg, int d,
                                    Rng& rng) {
  auto start = steiner();
  if (!start.ok()) {
    return Error(ErrorKind::kOracleFailure, "Steiner oracle failed: ",
                 start.status().message());
  }
  Point x = *std::move(start);
  if (static_cast<int>(x.size()) != d) {
    return Error(ErrorKind::kOracleFailure, "Steiner oracle returned dimension ",
                 x.size());
  }
  for (int64_t t = 1; t <= cfg.k; ++t) {
    Point y = LangevinIncrement(d, cfg, /*truncate=*/true, rng);
    for (int j = 0; j < d; ++j) y[j] += x[j];
    auto next = project(y, t);
    if (!next.ok()) {
      return Error(ErrorKind::kOracleFailure, "projection oracle failed at step ",
                   t, ": ", next.status().message());
    }
    x = *std::move(next);
  }
  return x;
}

Point PerturbLikeOracle(const Point& exact, const NoisyOracleParams& op,
                        Rng& rng) {
  const int d = static_cast<int>(exact.size());
  Point e;
  if (rng.Uniform() < op.beta) {
    e = rng.UnitSphere(d);
    for (double& v : e) v *= op.r;
  } else {
    e = rng.UniformBall(d, op.alpha_tilde);
  }
  for (int j = 0; j < d; ++j) e[j] += exact[j];
  return e;
}

double CouplingGapBound(const NoisyOracleParams& op, const LangevinConfig& cfg,
                        const AdmissibleParams& p) {
  const double per_step = op.r * op.r * op.beta + op.alpha_tilde * op.alpha_tilde;
  return static_cast<double>(cfg.k + 1) *
             (per_step + 4.0 * p.r_max * std::sqrt(per_step)) +
         cfg.eta;
}

}  // namespace floatbody
