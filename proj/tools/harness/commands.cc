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

#include "harness/commands.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "floatbody/extension.h"
#include "floatbody/flat_laplace.h"
#include "floatbody/geometry.h"
#include "floatbody/langevin.h"
#include "floatbody/ledger.h"
#include "floatbody/private_ops.h"
#include "floatbody/private_pipeline.h"
#include "floatbody/quantile.h"
#include "floatbody/rng.h"
#include "floatbody/sample_io.h"
#include "floatbody/status.h"
#include "floatbody/typical_set.h"
#include "floatbody/wasserstein.h"

namespace floatbody::harness {
namespace {

using OJson = nlohmann::ordered_json;

// Sub-streams of the master seed.
constexpr uint64_t kNetStream = 1;
constexpr uint64_t kPrepareStream = 2;
constexpr uint64_t kReferenceStream = 3;
constexpr uint64_t kCrnStream = 4;
constexpr uint64_t kTrialStreamBase = 1000;

constexpr char kParallelNote[] = "parallel: metrics reproducible, byte order not";

// Runs fn(0..n-1) on up to `threads` workers; reports the error of the
// lowest failing index.
absl::Status ParallelFor(int n, int threads,
                         const std::function<absl::Status(int)>& fn) {
  std::vector<absl::Status> status(n);
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) {
      status[i] = fn(i);
      if (!status[i].ok()) return status[i];
    }
    return absl::OkStatus();
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min(threads, n); ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) status[i] = fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
  for (const absl::Status& s : status) {
    if (!s.ok()) return s;
  }
  return absl::OkStatus();
}

std::string Hex(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

double LInf(const Point& a, const Point& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

uint64_t Seed(const ExperimentConfig& cfg) { return cfg.seed.value_or(0); }

Rng TrialRng(const ExperimentConfig& cfg, int t) {
  return Rng(DeriveSeed(Seed(cfg), kTrialStreamBase + t));
}

DistributionSpec Spec(const ExperimentConfig& cfg) {
  DistributionSpec s = cfg.distribution;
  s.seed = Seed(cfg);
  return s;
}

absl::StatusOr<Sample> LoadSample(const ExperimentConfig& cfg) {
  if (cfg.input.empty()) return SampleDistribution(Spec(cfg), cfg.n);
  FB_ASSIGN_OR_RETURN(std::string text, ReadFile(cfg.input));
  return SampleFromCsv(text);
}

// The population the sample came from is known only for generated data.
bool HasTruth(const ExperimentConfig& cfg) { return cfg.input.empty(); }

absl::StatusOr<DirectionNet> BuildNet(const ExperimentConfig& cfg, int d) {
  if (cfg.net.kind == "circle") {
    if (d != 2) {
      return Error(ErrorKind::kInvalidConfig, "circle nets need d = 2, data has ",
                   d);
    }
    return CircleNet(cfg.net.size, cfg.net.phase);
  }
  if (cfg.net.kind == "axis") return AxisNet(d);
  if (cfg.net.kind == "deterministic") {
    return DeterministicSphereNet(d, cfg.net.gamma);
  }
  Rng rng(DeriveSeed(Seed(cfg), kNetStream));
  return RandomSphereNet(d, cfg.net.size, rng);
}

absl::StatusOr<AdmissibleParams> BuildParams(const ExperimentConfig& cfg,
                                             int d, int64_t n) {
  if (cfg.params.kind == "gaussian") return GaussianParams(cfg.q, d, n);
  if (cfg.params.kind == "logconcave") return LogConcaveParams(cfg.q, d, n);
  AdmissibleParams p = cfg.params.explicit_params;
  p.q = cfg.q;
  if (p.c.empty()) p.c.assign(d, 0.0);
  FB_RETURN_IF_ERROR(ValidateParams(p));
  return p;
}

PrivateOpOptions OpOptions(const ExperimentConfig& cfg) {
  PrivateOpOptions o;
  o.beta = cfg.beta;
  o.c_w = cfg.c_w;
  o.steiner_directions = cfg.steiner_directions;
  return o;
}

double FailureThreshold(const ExperimentConfig& cfg) {
  if (cfg.thresholds.max_failure_rate) return *cfg.thresholds.max_failure_rate;
  return cfg.beta + 3.0 * std::sqrt(cfg.beta / cfg.trials);
}

OJson ParamsJson(const AdmissibleParams& p) {
  return {{"q", p.q}, {"r_min", p.r_min}, {"r_max", p.r_max},
          {"r", p.r}, {"l", p.l},         {"b", p.b}};
}

OJson LedgerSummary(const PrivacyLedger& ledger) {
  OJson j;
  j["total_epsilon"] = ledger.total_epsilon();
  j["naive_sum"] = ledger.naive_sum();
  j["disjoint"] = ledger.Disjoint();
  j["calls"] = ledger.calls().size();
  j["batches"] = OJson::array();
  for (const BatchRange& b : ledger.batches()) {
    j["batches"].push_back({{"id", b.id},
                            {"begin", b.begin},
                            {"end", b.end},
                            {"epsilon", ledger.BatchEpsilon(b.id)}});
  }
  return j;
}

OJson GateJson(const TypicalReport& rep) {
  return {{"pass", rep.pass},
          {"directions", rep.directions.size()},
          {"failed_directions", rep.failed_directions},
          {"ball_radius", rep.ball.radius},
          {"ball_pass", rep.ball_pass}};
}

OJson MechanismJson(const MechanismParams& mp) {
  return {{"epsilon", mp.epsilon}, {"slope", mp.slope}, {"cap", mp.cap},
          {"region_radius", mp.region_radius}, {"w", mp.cfg.w},
          {"holder_k", mp.query.k}, {"holder_h", mp.query.h},
          {"m", mp.query.m}};
}

std::string F(double v) { return FormatDouble(v); }

CommandResult NewResult(const std::string& command,
                        const ExperimentConfig& cfg, const RunOptions& opts) {
  CommandResult r;
  r.record["command"] = command;
  r.record["config_digest"] = ConfigDigest(cfg);
  r.record["seed"] = Seed(cfg);
  r.record["config"] = OJson::parse(CanonicalConfig(cfg));
  if (opts.threads > 1) r.record["parallel"] = kParallelNote;
  r.record["notes"] = OJson::array();
  return r;
}

void AddData(CommandResult& r, const Sample& x) {
  r.record["data"] = {{"n", x.n()}, {"d", x.d()},
                      {"source_hash", Hex(x.SourceHash())}};
}

// Floating body of the population over the net, with a feasible witness.
absl::StatusOr<Polytope> AnalyticBody(const ExperimentConfig& cfg,
                                      const DirectionNet& net) {
  FB_ASSIGN_OR_RETURN(std::vector<double> h,
                      AnalyticQuantiles(Spec(cfg), net, cfg.q));
  FB_ASSIGN_OR_RETURN(Polytope body, PolytopeFromSupport(net, h));
  FB_ASSIGN_OR_RETURN(InscribedBall ball, ChebyshevBall(body));
  body.set_feasible_witness(ball.center);
  return body;
}

// Uniform draws from a bounded polytope by rejection from its bounding box.
absl::StatusOr<std::vector<Point>> UniformInPolytope(const Polytope& body,
                                                     int count, Rng& rng) {
  const int d = body.dim();
  Point lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    Point e(d, 0.0);
    e[i] = 1.0;
    FB_ASSIGN_OR_RETURN(SupportResult up, SupportFunction(body, e));
    e[i] = -1.0;
    FB_ASSIGN_OR_RETURN(SupportResult down, SupportFunction(body, e));
    hi[i] = up.value;
    lo[i] = -down.value;
  }
  std::vector<Point> out;
  int64_t tries = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++tries > 100000000) {
      return Error(ErrorKind::kRejectionStall,
                   "reference sampler accepted too rarely");
    }
    Point p(d);
    for (int i = 0; i < d; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * rng.Uniform();
    if (body.Contains(p, 0.0)) out.push_back(std::move(p));
  }
  return out;
}

absl::StatusOr<CommandResult> CmdGen(const ExperimentConfig& cfg,
                                     const RunOptions& opts) {
  CommandResult r = NewResult("gen", cfg, opts);
  FB_ASSIGN_OR_RETURN(Sample x, SampleDistribution(Spec(cfg), cfg.n));
  AddData(r, x);
  r.metrics.header = {"coordinate", "mean", "variance"};
  double trace = 0.0;
  for (int j = 0; j < x.d(); ++j) {
    double s = 0.0, s2 = 0.0;
    for (int64_t i = 0; i < x.n(); ++i) {
      s += x.row(i)[j];
      s2 += x.row(i)[j] * x.row(i)[j];
    }
    const double mean = s / x.n();
    const double var = s2 / x.n() - mean * mean;
    trace += var;
    r.metrics.rows.push_back({std::to_string(j), F(mean), F(var)});
  }
  r.record["summary"] = {{"mean_variance", trace / x.d()}};
  r.artifacts.push_back({"gen_data.csv", SampleToCsv(x)});
  return r;
}

absl::StatusOr<CommandResult> CmdQuantiles(const ExperimentConfig& cfg,
                                           const RunOptions& opts) {
  CommandResult r = NewResult("quantiles", cfg, opts);
  FB_ASSIGN_OR_RETURN(Sample x, LoadSample(cfg));
  AddData(r, x);
  FB_ASSIGN_OR_RETURN(DirectionNet net, BuildNet(cfg, x.d()));
  FB_ASSIGN_OR_RETURN(AdmissibleParams p, BuildParams(cfg, x.d(), x.n()));
  r.record["params"] = ParamsJson(p);
  FB_ASSIGN_OR_RETURN(PreparedRelease rel,
                      PrepareQuantiles(x, net, cfg.epsilon, p, OpOptions(cfg)));
  r.record["gate"] = GateJson(rel.gate);
  r.record["mechanism"] = MechanismJson(rel.mp);
  r.record["nonprivate"] = rel.center;
  std::optional<std::vector<double>> truth;
  if (HasTruth(cfg)) {
    FB_ASSIGN_OR_RETURN(truth, AnalyticQuantiles(Spec(cfg), net, cfg.q));
    r.record["truth"] = *truth;
  }
  std::vector<Point> outputs(cfg.trials);
  FB_RETURN_IF_ERROR(ParallelFor(cfg.trials, opts.threads, [&](int t) {
    Rng rng = TrialRng(cfg, t);
    FB_ASSIGN_OR_RETURN(outputs[t], rel.Draw(rng));
    return absl::OkStatus();
  }));
  PrivacyLedger ledger;
  FB_RETURN_IF_ERROR(ledger.AddBatch(0, 0, x.n()));
  r.metrics.header = {"trial", "error_to_nonprivate", "error_to_truth",
                      "failed"};
  r.record["trials"] = OJson::array();
  int failures = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    FB_RETURN_IF_ERROR(ledger.Charge(rel.op, cfg.epsilon, 0));
    const double e_np = LInf(outputs[t], rel.center);
    const double e_truth = truth ? LInf(outputs[t], *truth) : e_np;
    const bool failed = e_truth > cfg.alpha;
    failures += failed;
    r.record["trials"].push_back({{"trial", t},
                                  {"output", outputs[t]},
                                  {"error_to_nonprivate", e_np},
                                  {"error_to_truth", e_truth}});
    r.metrics.rows.push_back(
        {std::to_string(t), F(e_np), truth ? F(e_truth) : "", failed ? "1" : "0"});
  }
  const double rate = static_cast<double>(failures) / cfg.trials;
  r.pass = rate <= FailureThreshold(cfg);
  r.record["metrics"] = {{"failure_rate", rate},
                         {"max_failure_rate", FailureThreshold(cfg)},
                         {"alpha", cfg.alpha}};
  r.record["ledger"] = LedgerSummary(ledger);
  if (!truth) {
    r.record["notes"].push_back("no population truth; errors are against the "
                                "non-private quantiles");
  }
  return r;
}

absl::StatusOr<CommandResult> CmdSteiner(const ExperimentConfig& cfg,
                                         const RunOptions& opts) {
  CommandResult r = NewResult("steiner", cfg, opts);
  FB_ASSIGN_OR_RETURN(Sample x, LoadSample(cfg));
  AddData(r, x);
  FB_ASSIGN_OR_RETURN(DirectionNet net, BuildNet(cfg, x.d()));
  FB_ASSIGN_OR_RETURN(AdmissibleParams p, BuildParams(cfg, x.d(), x.n()));
  r.record["params"] = ParamsJson(p);
  Rng prep(DeriveSeed(Seed(cfg), kPrepareStream));
  FB_ASSIGN_OR_RETURN(
      PreparedRelease rel,
      PrepareSteiner(x, net, cfg.epsilon, p, prep, OpOptions(cfg)));
  FB_ASSIGN_OR_RETURN(FloatingBodyApprox fb, FloatingBody(x, cfg.q, net));
  r.record["gate"] = GateJson(rel.gate);
  r.record["mechanism"] = MechanismJson(rel.mp);
  r.record["nonprivate"] = rel.center;
  // Every supported population is centrally symmetric, so the Steiner point
  // of its floating body is the origin.
  const Point truth(x.d(), 0.0);
  const bool has_truth = HasTruth(cfg);
  if (has_truth) r.record["truth"] = truth;
  std::vector<Point> outputs(cfg.trials);
  FB_RETURN_IF_ERROR(ParallelFor(cfg.trials, opts.threads, [&](int t) {
    Rng rng = TrialRng(cfg, t);
    FB_ASSIGN_OR_RETURN(outputs[t], rel.Draw(rng));
    return absl::OkStatus();
  }));
  PrivacyLedger ledger;
  FB_RETURN_IF_ERROR(ledger.AddBatch(0, 0, x.n()));
  r.metrics.header = {"trial", "error_to_nonprivate", "error_to_truth",
                      "inside_body", "failed"};
  r.record["trials"] = OJson::array();
  int failures = 0;
  int outside = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    FB_RETURN_IF_ERROR(ledger.Charge(rel.op, cfg.epsilon, 0));
    const double e_np = Distance(outputs[t], rel.center);
    const double e_truth = has_truth ? Distance(outputs[t], truth) : e_np;
    const bool inside = fb.body.Contains(outputs[t], 1e-9);
    outside += !inside;
    const bool failed = e_truth > cfg.alpha;
    failures += failed;
    r.record["trials"].push_back({{"trial", t},
                                  {"output", outputs[t]},
                                  {"error_to_nonprivate", e_np},
                                  {"error_to_truth", e_truth},
                                  {"inside_body", inside}});
    r.metrics.rows.push_back({std::to_string(t), F(e_np),
                              has_truth ? F(e_truth) : "", inside ? "1" : "0",
                              failed ? "1" : "0"});
  }
  const double rate = static_cast<double>(failures) / cfg.trials;
  r.pass = rate <= FailureThreshold(cfg);
  r.record["metrics"] = {
      {"failure_rate", rate},
      {"max_failure_rate", FailureThreshold(cfg)},
      {"alpha", cfg.alpha},
      {"exit_frequency", static_cast<double>(outside) / cfg.trials}};
  r.record["ledger"] = LedgerSummary(ledger);
  return r;
}

absl::StatusOr<CommandResult> CmdProject(const ExperimentConfig& cfg,
                                         const RunOptions& opts) {
  CommandResult r = NewResult("project", cfg, opts);
  if (cfg.point.empty()) {
    return Error(ErrorKind::kInvalidConfig, "/point: required by project");
  }
  FB_ASSIGN_OR_RETURN(Sample x, LoadSample(cfg));
  AddData(r, x);
  FB_ASSIGN_OR_RETURN(DirectionNet net, BuildNet(cfg, x.d()));
  FB_ASSIGN_OR_RETURN(AdmissibleParams p, BuildParams(cfg, x.d(), x.n()));
  r.record["params"] = ParamsJson(p);
  FB_ASSIGN_OR_RETURN(PreparedRelease rel,
                      PrepareProject(x, net, cfg.point, cfg.epsilon, p,
                                     OpOptions(cfg)));
  r.record["gate"] = GateJson(rel.gate);
  r.record["mechanism"] = MechanismJson(rel.mp);
  r.record["nonprivate"] = rel.center;
  std::optional<Point> truth;
  if (HasTruth(cfg)) {
    FB_ASSIGN_OR_RETURN(Polytope body, AnalyticBody(cfg, net));
    FB_ASSIGN_OR_RETURN(ProjectionResult pr, Project(body, cfg.point));
    truth = pr.point;
    r.record["truth"] = *truth;
  }
  std::vector<Point> outputs(cfg.trials);
  FB_RETURN_IF_ERROR(ParallelFor(cfg.trials, opts.threads, [&](int t) {
    Rng rng = TrialRng(cfg, t);
    FB_ASSIGN_OR_RETURN(outputs[t], rel.Draw(rng));
    return absl::OkStatus();
  }));
  PrivacyLedger ledger;
  FB_RETURN_IF_ERROR(ledger.AddBatch(0, 0, x.n()));
  r.metrics.header = {"trial", "error_to_nonprivate", "error_to_truth",
                      "failed"};
  r.record["trials"] = OJson::array();
  int failures = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    FB_RETURN_IF_ERROR(ledger.Charge(rel.op, cfg.epsilon, 0));
    const double e_np = Distance(outputs[t], rel.center);
    const double e_truth = truth ? Distance(outputs[t], *truth) : e_np;
    const bool failed = e_truth > cfg.alpha;
    failures += failed;
    r.record["trials"].push_back({{"trial", t},
                                  {"output", outputs[t]},
                                  {"error_to_nonprivate", e_np},
                                  {"error_to_truth", e_truth}});
    r.metrics.rows.push_back({std::to_string(t), F(e_np),
                              truth ? F(e_truth) : "", failed ? "1" : "0"});
  }
  const double rate = static_cast<double>(failures) / cfg.trials;
  r.pass = rate <= FailureThreshold(cfg);
  r.record["metrics"] = {{"failure_rate", rate},
                         {"max_failure_rate", FailureThreshold(cfg)},
                         {"alpha", cfg.alpha}};
  r.record["ledger"] = LedgerSummary(ledger);
  return r;
}

absl::StatusOr<LangevinConfig> BuildLangevin(const ExperimentConfig& cfg,
                                             const AdmissibleParams& p,
                                             int d) {
  LangevinConfig lc;
  if (cfg.langevin_k && cfg.langevin_eta) {
    lc.k = *cfg.langevin_k;
    lc.eta = *cfg.langevin_eta;
    lc.alpha = cfg.alpha;
    lc.c_eta = cfg.c_eta;
    lc.c_k = cfg.c_k;
  } else {
    FB_ASSIGN_OR_RETURN(lc, MakeLangevinConfig(p, d, cfg.alpha, cfg.c_eta,
                                               cfg.c_k));
    if (cfg.langevin_k) lc.k = *cfg.langevin_k;
    if (cfg.langevin_eta) lc.eta = *cfg.langevin_eta;
  }
  lc.trunc = TruncationRadius(d, std::max<int64_t>(lc.k, 1));
  return lc;
}

absl::StatusOr<CommandResult> CmdSample(const ExperimentConfig& cfg,
                                        const RunOptions& opts) {
  CommandResult r = NewResult("sample", cfg, opts);
  FB_ASSIGN_OR_RETURN(Sample x, LoadSample(cfg));
  AddData(r, x);
  FB_ASSIGN_OR_RETURN(DirectionNet net, BuildNet(cfg, x.d()));
  FB_ASSIGN_OR_RETURN(AdmissibleParams p, BuildParams(cfg, x.d(), x.n()));
  r.record["params"] = ParamsJson(p);
  FB_ASSIGN_OR_RETURN(LangevinConfig lc, BuildLangevin(cfg, p, x.d()));
  r.record["langevin"] = {{"k", lc.k}, {"eta", lc.eta}, {"trunc", lc.trunc}};
  PipelineOptions po;
  po.op = OpOptions(cfg);
  po.policy = cfg.batch_policy == "strict" ? BatchPolicy::kStrict
                                           : BatchPolicy::kGateOnly;
  po.constants = cfg.sample_size;
  Rng prep(DeriveSeed(Seed(cfg), kPrepareStream));
  FB_ASSIGN_OR_RETURN(PreparedFloatingBodySampler sampler,
                      PreparedFloatingBodySampler::Create(
                          x, net, cfg.epsilon, cfg.alpha, p, lc, prep, po));
  r.record["batches"] = {{"count", sampler.batches()},
                         {"rows", sampler.batch_rows()},
                         {"policy", cfg.batch_policy}};
  r.record["notes"].push_back(
      absl::StrCat("rows split into ", sampler.batches(),
                   " disjoint batches; the ledger total uses parallel "
                   "composition"));
  r.record["output_kind"] =
      sampler.steiner_only() ? "Steiner-only degenerate" : "Langevin chain";

  std::vector<Point> outputs(cfg.trials);
  FB_RETURN_IF_ERROR(ParallelFor(cfg.trials, opts.threads, [&](int t) {
    Rng rng = TrialRng(cfg, t);
    FB_ASSIGN_OR_RETURN(outputs[t], sampler.Draw(rng, nullptr));
    return absl::OkStatus();
  }));
  PrivacyLedger ledger;
  FB_RETURN_IF_ERROR(sampler.RegisterBatches(ledger));
  for (int t = 0; t < cfg.trials; ++t) {
    FB_RETURN_IF_ERROR(ledger.Charge(sampler.steiner().op, cfg.epsilon, 0));
    for (int64_t b = 1; b < sampler.batches(); ++b) {
      FB_RETURN_IF_ERROR(ledger.Charge("private_project", cfg.epsilon, b));
    }
  }

  // Reference: uniform draws on the population floating body over the net
  // when the population is known, else on the body of the whole sample.
  Polytope reference = Polytope::Box(x.d(), -1.0, 1.0);
  if (HasTruth(cfg)) {
    FB_ASSIGN_OR_RETURN(reference, AnalyticBody(cfg, net));
  } else {
    FB_ASSIGN_OR_RETURN(FloatingBodyApprox fb, FloatingBody(x, cfg.q, net));
    reference = fb.body;
  }
  Rng ref_rng(DeriveSeed(Seed(cfg), kReferenceStream));
  FB_ASSIGN_OR_RETURN(std::vector<Point> uniform,
                      UniformInPolytope(reference, cfg.trials, ref_rng));
  FB_ASSIGN_OR_RETURN(double w2, Wasserstein2Empirical(outputs, uniform));
  const double w2_over_d = w2 * w2 / x.d();
  const double threshold = cfg.thresholds.max_w2.value_or(9.0 * cfg.alpha);

  r.metrics.header = {"chain", "violation"};
  for (int j = 0; j < x.d(); ++j) {
    r.metrics.header.insert(r.metrics.header.end() - 1, absl::StrCat("x", j));
  }
  r.record["trials"] = OJson::array();
  for (int t = 0; t < cfg.trials; ++t) {
    const double viol = std::max(0.0, reference.MaxViolation(outputs[t]));
    r.record["trials"].push_back(
        {{"chain", t}, {"output", outputs[t]}, {"violation", viol}});
    std::vector<std::string> row = {std::to_string(t)};
    for (double v : outputs[t]) row.push_back(F(v));
    row.push_back(F(viol));
    r.metrics.rows.push_back(std::move(row));
  }
  r.pass = w2_over_d <= threshold;
  r.record["metrics"] = {{"w2_squared_over_d", w2_over_d},
                         {"max_w2", threshold},
                         {"chains", cfg.trials}};
  r.record["ledger"] = LedgerSummary(ledger);
  return r;
}

absl::StatusOr<CommandResult> CmdTypical(const ExperimentConfig& cfg,
                                         const RunOptions& opts) {
  CommandResult r = NewResult("typical", cfg, opts);
  FB_ASSIGN_OR_RETURN(Sample x, LoadSample(cfg));
  AddData(r, x);
  FB_ASSIGN_OR_RETURN(DirectionNet net, BuildNet(cfg, x.d()));
  FB_ASSIGN_OR_RETURN(AdmissibleParams p, BuildParams(cfg, x.d(), x.n()));
  r.record["params"] = ParamsJson(p);
  FB_ASSIGN_OR_RETURN(TypicalSetConfig tc,
                      OpTypicalConfig(x.n(), x.d(), net.size(), p,
                                      OpOptions(cfg)));
  FB_ASSIGN_OR_RETURN(TypicalReport rep, CheckTypical(x, net, tc));
  r.record["w"] = tc.w;
  r.record["kappa_max"] = KappaMax(tc);
  r.record["report"] = GateJson(rep);
  r.record["report"]["first_failure"] = rep.first_failure;
  r.record["report"]["ball_center"] = rep.ball.center;
  r.metrics.header = {"direction", "quantile", "kappa_max", "pass",
                      "vacuous", "failed_condition"};
  for (size_t i = 0; i < rep.directions.size(); ++i) {
    const DirectionCheck& c = rep.directions[i];
    r.metrics.rows.push_back({std::to_string(i), F(c.quantile),
                              std::to_string(c.kappa_max), c.pass ? "1" : "0",
                              c.vacuous ? "1" : "0", c.failed_condition});
  }
  r.pass = rep.pass;
  return r;
}

absl::StatusOr<CommandResult> CmdAuditExtension(const ExperimentConfig& cfg,
                                                const RunOptions& opts) {
  CommandResult r = NewResult("audit", cfg, opts);
  FB_ASSIGN_OR_RETURN(std::vector<EnumerableInstance> instances,
                      ShippedInstances());
  std::vector<ExtensionAuditReport> reports(instances.size());
  FB_RETURN_IF_ERROR(ParallelFor(
      static_cast<int>(instances.size()), opts.threads, [&](int i) {
        FB_ASSIGN_OR_RETURN(
            reports[i],
            ExtensionAudit(instances[i], EnumerateGrid(instances[i])));
        return absl::OkStatus();
      }));
  r.metrics.header = {"instance", "grid", "n", "epsilon", "h_members",
                      "probes", "pairs", "max_ratio_slack", "max_tv", "pass"};
  r.record["instances"] = OJson::array();
  for (size_t i = 0; i < instances.size(); ++i) {
    const EnumerableInstance& inst = instances[i];
    const ExtensionAuditReport& rep = reports[i];
    r.pass = r.pass && rep.pass;
    r.record["instances"].push_back({{"name", inst.name},
                                     {"grid", inst.grid},
                                     {"n", inst.n},
                                     {"epsilon", inst.epsilon},
                                     {"h_members", inst.h_members.size()},
                                     {"probes", rep.probes},
                                     {"pairs", rep.pairs},
                                     {"max_ratio_slack", rep.max_ratio_slack},
                                     {"max_tv", rep.max_tv},
                                     {"pass", rep.pass}});
    r.metrics.rows.push_back(
        {inst.name, std::to_string(inst.grid.size()), std::to_string(inst.n),
         F(inst.epsilon), std::to_string(inst.h_members.size()),
         std::to_string(rep.probes), std::to_string(rep.pairs),
         F(rep.max_ratio_slack), F(rep.max_tv), rep.pass ? "1" : "0"});
  }
  r.record["suite"] = "extension";
  return r;
}

// Neighbouring pairs X, Y with Y = X after replacing d_H rows by fresh
// draws; pairs where Y leaves the typical set are reported and skipped.
absl::StatusOr<CommandResult> CmdAuditMechanism(const ExperimentConfig& cfg,
                                                const RunOptions& opts) {
  CommandResult r = NewResult("audit", cfg, opts);
  r.record["suite"] = "mechanism";
  FB_ASSIGN_OR_RETURN(Sample x, LoadSample(cfg));
  AddData(r, x);
  FB_ASSIGN_OR_RETURN(DirectionNet net, BuildNet(cfg, x.d()));
  FB_ASSIGN_OR_RETURN(AdmissibleParams p, BuildParams(cfg, x.d(), x.n()));
  FB_ASSIGN_OR_RETURN(TypicalSetConfig tc,
                      OpTypicalConfig(x.n(), x.d(), net.size(), p,
                                      OpOptions(cfg)));
  FB_ASSIGN_OR_RETURN(TypicalReport gate, CheckTypical(x, net, tc));
  if (!gate.pass) {
    return Error(ErrorKind::kTypicalityGateFailed, gate.first_failure);
  }
  const HolderQuerySpec spec{1.0, 1.0, static_cast<int>(net.size()),
                             NormKind::kLInf};
  FB_ASSIGN_OR_RETURN(MechanismParams mp,
                      MakeMechanismParams(cfg.epsilon, tc, spec));
  r.record["mechanism"] = MechanismJson(mp);
  const NormalizerCrn crn =
      MakeNormalizerCrn(mp, 20000, DeriveSeed(Seed(cfg), kCrnStream));
  FB_ASSIGN_OR_RETURN(std::vector<double> cx, QueryQuantiles(x, cfg.q, net));
  const int64_t kmax = std::max<int64_t>(KappaMax(tc), 1);

  struct PairResult {
    int64_t dh = 0;
    bool typical = false;
    double delta = 0.0;
    double bound = 0.0;
    AuditResult audit;
  };
  std::vector<PairResult> res(cfg.trials);
  FB_RETURN_IF_ERROR(ParallelFor(cfg.trials, opts.threads, [&](int t) {
    Rng rng = TrialRng(cfg, t);
    PairResult& pr = res[t];
    pr.dh = 1 + t % kmax;
    std::vector<Point> rows;
    for (int64_t i = 0; i < x.n(); ++i) {
      rows.emplace_back(x.row(i).begin(), x.row(i).end());
    }
    for (int64_t k = 0; k < pr.dh; ++k) {
      const int64_t i = rng.UniformInt(0, x.n() - 1);
      rows[i] = DrawPoint(Spec(cfg), rng);
    }
    FB_ASSIGN_OR_RETURN(Sample y, Sample::FromRows(rows));
    FB_ASSIGN_OR_RETURN(const int64_t dh, HammingDistance(x, y));
    pr.dh = dh;
    FB_ASSIGN_OR_RETURN(TypicalReport rep, CheckTypical(y, net, tc));
    pr.typical = rep.pass;
    if (!pr.typical || dh == 0) return absl::OkStatus();
    FB_ASSIGN_OR_RETURN(std::vector<double> cy, QueryQuantiles(y, cfg.q, net));
    pr.delta = LInf(cx, cy);
    pr.bound = SensitivityBound(tc, dh);
    std::vector<Point> grid;
    const double spread = 3.0 / mp.slope;
    for (int g = 0; g < 200; ++g) {
      Point o = cx;
      for (double& v : o) v += spread * (2.0 * rng.Uniform() - 1.0);
      grid.push_back(std::move(o));
    }
    FB_ASSIGN_OR_RETURN(pr.audit, PrivacyRatioAudit(cx, cy, dh, mp, grid, crn));
    return absl::OkStatus();
  }));
  r.metrics.header = {"pair", "d_h", "typical", "delta_q", "bound",
                      "max_slack", "pass"};
  int audited = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.trials; ++t) {
    const PairResult& pr = res[t];
    bool ok = true;
    if (pr.typical && pr.dh > 0) {
      ++audited;
      ok = pr.audit.pass && pr.delta <= pr.bound;
      worst = std::max(worst, pr.audit.max_slack);
    }
    r.pass = r.pass && ok;
    r.metrics.rows.push_back(
        {std::to_string(t), std::to_string(pr.dh), pr.typical ? "1" : "0",
         F(pr.delta), F(pr.bound), F(pr.audit.max_slack), ok ? "1" : "0"});
  }
  r.record["metrics"] = {{"pairs", cfg.trials},
                         {"audited", audited},
                         {"max_slack", audited > 0 ? worst : 0.0}};
  return r;
}

absl::StatusOr<CommandResult> CmdAudit(const ExperimentConfig& cfg,
                                       const RunOptions& opts) {
  if (cfg.audit_suite == "mechanism") return CmdAuditMechanism(cfg, opts);
  return CmdAuditExtension(cfg, opts);
}

std::string ToCsv(const MetricsTable& t) {
  std::string out = absl::StrJoin(t.header, ",") + "\n";
  for (const auto& row : t.rows) absl::StrAppend(&out, absl::StrJoin(row, ","), "\n");
  return out;
}

}  // namespace

const std::vector<std::string>& CommandNames() {
  static const auto* names = new std::vector<std::string>{
      "gen", "quantiles", "steiner", "project", "sample", "typical", "audit"};
  return *names;
}

absl::StatusOr<CommandResult> RunCommand(const std::string& command,
                                         const ExperimentConfig& cfg,
                                         const RunOptions& opts) {
  if (!cfg.seed.has_value()) {
    return Error(ErrorKind::kInvalidConfig,
                 "/seed: required (in the config or via --seed)");
  }
  if (command == "gen") return CmdGen(cfg, opts);
  if (command == "quantiles") return CmdQuantiles(cfg, opts);
  if (command == "steiner") return CmdSteiner(cfg, opts);
  if (command == "project") return CmdProject(cfg, opts);
  if (command == "sample") return CmdSample(cfg, opts);
  if (command == "typical") return CmdTypical(cfg, opts);
  if (command == "audit") return CmdAudit(cfg, opts);
  return Error(ErrorKind::kInvalidConfig, "unknown command '", command, "'");
}

absl::Status WriteOutputs(const std::string& command,
                          const CommandResult& result, const RunOptions& opts,
                          double wall_seconds) {
  std::error_code ec;
  std::filesystem::create_directories(opts.out_dir, ec);
  if (ec) {
    return Error(ErrorKind::kIo, "cannot create ", opts.out_dir, ": ",
                 ec.message());
  }
  const std::filesystem::path dir(opts.out_dir);
  OJson record = result.record;
  record["pass"] = result.pass;
  if (opts.format != OutputFormat::kCsv) {
    FB_RETURN_IF_ERROR(WriteFile((dir / (command + "_record.json")).string(),
                                 record.dump(2) + "\n"));
  }
  if (opts.format != OutputFormat::kJson) {
    FB_RETURN_IF_ERROR(WriteFile((dir / (command + "_metrics.csv")).string(),
                                 ToCsv(result.metrics)));
  }
  for (const auto& [name, contents] : result.artifacts) {
    FB_RETURN_IF_ERROR(WriteFile((dir / name).string(), contents));
  }
  OJson timing = {{"command", command}, {"wall_seconds", wall_seconds}};
  return WriteFile((dir / (command + "_timing.json")).string(),
                   timing.dump(2) + "\n");
}

int RunCli(const std::string& command, const std::string& config_path,
           std::optional<uint64_t> seed, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  auto fail = [&](const absl::Status& st) {
    std::cerr << "floatbody " << command << ": " << st.message() << "\n";
    std::error_code ec;
    std::filesystem::create_directories(opts.out_dir, ec);
    if (!ec) {
      OJson rec = {{"command", command},
                   {"error_kind", std::string(ErrorKindName(ErrorKindOf(st)))},
                   {"error", std::string(st.message())},
                   {"pass", false}};
      (void)WriteFile(
          (std::filesystem::path(opts.out_dir) / (command + "_record.json"))
              .string(),
          rec.dump(2) + "\n");
    }
    return kExitError;
  };
  auto text = ReadFile(config_path);
  if (!text.ok()) return fail(text.status());
  auto cfg = ParseConfig(*text);
  if (!cfg.ok()) return fail(cfg.status());
  if (seed.has_value()) cfg->seed = seed;
  auto result = RunCommand(command, *cfg, opts);
  if (!result.ok()) return fail(result.status());
  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  absl::Status st = WriteOutputs(command, *result, opts, wall);
  if (!st.ok()) return fail(st);
  std::cout << command << ": " << (result->pass ? "pass" : "threshold failure")
            << " (" << opts.out_dir << ")\n";
  return result->pass ? kExitPass : kExitThresholdFailure;
}

}  // namespace floatbody::harness
