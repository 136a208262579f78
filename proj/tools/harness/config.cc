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

#include "harness/config.h"

#include <cmath>
#include <cstdio>
#include <set>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "floatbody/status.h"
#include "nlohmann/json.hpp"

namespace floatbody::harness {
namespace {

using Json = nlohmann::json;

// 1-based line of the key at the end of path, found by locating each path
// component in turn.
std::optional<int> LocateLine(std::string_view text,
                              const std::vector<std::string>& path) {
  size_t pos = 0;
  for (const std::string& key : path) {
    if (!key.empty() && key[0] == '[') continue;
    pos = text.find("\"" + key + "\"", pos);
    if (pos == std::string_view::npos) return std::nullopt;
  }
  int line = 1;
  for (size_t i = 0; i < pos; ++i) line += text[i] == '\n';
  return line;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  absl::Status Fail(const std::vector<std::string>& path,
                    std::string_view what) const {
    std::string where = "/" + absl::StrJoin(path, "/");
    if (auto line = LocateLine(text_, path)) {
      absl::StrAppend(&where, " (line ", *line, ")");
    }
    return Error(ErrorKind::kInvalidConfig, where, ": ", std::string(what));
  }

  // Rejects keys outside the allowed set.
  absl::Status Keys(const Json& obj, const std::vector<std::string>& path,
                    const std::set<std::string>& allowed) const {
    if (!obj.is_object()) return Fail(path, "expected an object");
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.count(key)) {
        std::vector<std::string> p = path;
        p.push_back(key);
        return Fail(p, "unknown key");
      }
    }
    return absl::OkStatus();
  }

  absl::Status Number(const Json& obj, std::vector<std::string> path,
                      const std::string& key, double* out) const {
    if (!obj.contains(key) || obj.at(key).is_null()) return absl::OkStatus();
    path.push_back(key);
    const Json& v = obj.at(key);
    if (!v.is_number()) return Fail(path, "expected a number");
    *out = v.get<double>();
    if (!std::isfinite(*out)) return Fail(path, "expected a finite number");
    return absl::OkStatus();
  }

  absl::Status Integer(const Json& obj, std::vector<std::string> path,
                       const std::string& key, int64_t* out) const {
    if (!obj.contains(key) || obj.at(key).is_null()) return absl::OkStatus();
    path.push_back(key);
    const Json& v = obj.at(key);
    if (!v.is_number_integer()) return Fail(path, "expected an integer");
    *out = v.get<int64_t>();
    return absl::OkStatus();
  }

  absl::Status Int(const Json& obj, std::vector<std::string> path,
                   const std::string& key, int* out) const {
    int64_t v = *out;
    FB_RETURN_IF_ERROR(Integer(obj, path, key, &v));
    if (v < INT32_MIN || v > INT32_MAX) {
      path.push_back(key);
      return Fail(path, "integer out of range");
    }
    *out = static_cast<int>(v);
    return absl::OkStatus();
  }

  absl::Status String(const Json& obj, std::vector<std::string> path,
                      const std::string& key, std::string* out) const {
    if (!obj.contains(key) || obj.at(key).is_null()) return absl::OkStatus();
    path.push_back(key);
    const Json& v = obj.at(key);
    if (!v.is_string()) return Fail(path, "expected a string");
    *out = v.get<std::string>();
    return absl::OkStatus();
  }

  absl::Status OneOf(std::vector<std::string> path, const std::string& key,
                     const std::string& value,
                     const std::set<std::string>& allowed) const {
    if (allowed.count(value)) return absl::OkStatus();
    path.push_back(key);
    return Fail(path, absl::StrCat("'", value, "' is not one of {",
                                   absl::StrJoin(allowed, ", "), "}"));
  }

 private:
  std::string_view text_;
};

absl::Status Check(const Reader& r, bool ok, std::vector<std::string> path,
                   std::string_view what) {
  return ok ? absl::OkStatus() : r.Fail(path, what);
}

}  // namespace

absl::StatusOr<ExperimentConfig> ParseConfig(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    return Error(ErrorKind::kInvalidConfig, "malformed JSON: ", e.what());
  }
  Reader r(text);
  ExperimentConfig cfg;
  FB_RETURN_IF_ERROR(r.Keys(
      root, {},
      {"seed", "distribution", "input", "q", "epsilon", "alpha", "beta", "net",
       "params", "constants", "langevin", "trials", "steiner_directions",
       "point", "audit", "thresholds"}));

  if (root.contains("seed") && !root.at("seed").is_null()) {
    const Json& s = root.at("seed");
    if (!s.is_number_unsigned()) {
      return r.Fail({"seed"}, "expected a non-negative integer");
    }
    cfg.seed = s.get<uint64_t>();
  }

  if (root.contains("distribution")) {
    const Json& d = root.at("distribution");
    FB_RETURN_IF_ERROR(r.Keys(d, {"distribution"}, {"kind", "d", "n"}));
    std::string kind(DistributionKindName(cfg.distribution.kind));
    FB_RETURN_IF_ERROR(r.String(d, {"distribution"}, "kind", &kind));
    auto parsed = ParseDistributionKind(kind);
    if (!parsed.ok()) {
      return r.Fail({"distribution", "kind"},
                    absl::StrCat("unknown distribution '", kind, "'"));
    }
    cfg.distribution.kind = *parsed;
    FB_RETURN_IF_ERROR(r.Int(d, {"distribution"}, "d", &cfg.distribution.d));
    FB_RETURN_IF_ERROR(Check(r, cfg.distribution.d >= 1,
                             {"distribution", "d"}, "must be >= 1"));
    FB_RETURN_IF_ERROR(r.Integer(d, {"distribution"}, "n", &cfg.n));
    FB_RETURN_IF_ERROR(
        Check(r, cfg.n >= 1, {"distribution", "n"}, "must be >= 1"));
  }
  FB_RETURN_IF_ERROR(r.String(root, {}, "input", &cfg.input));

  FB_RETURN_IF_ERROR(r.Number(root, {}, "q", &cfg.q));
  FB_RETURN_IF_ERROR(
      Check(r, cfg.q > 0.5 && cfg.q < 1.0, {"q"}, "must lie in (1/2, 1)"));
  FB_RETURN_IF_ERROR(r.Number(root, {}, "epsilon", &cfg.epsilon));
  FB_RETURN_IF_ERROR(Check(r, cfg.epsilon > 0.0, {"epsilon"}, "must be > 0"));
  FB_RETURN_IF_ERROR(r.Number(root, {}, "alpha", &cfg.alpha));
  FB_RETURN_IF_ERROR(Check(r, cfg.alpha > 0.0, {"alpha"}, "must be > 0"));
  FB_RETURN_IF_ERROR(r.Number(root, {}, "beta", &cfg.beta));
  FB_RETURN_IF_ERROR(Check(r, cfg.beta > 0.0 && cfg.beta < 1.0, {"beta"},
                           "must lie in (0, 1)"));

  if (root.contains("net")) {
    const Json& n = root.at("net");
    FB_RETURN_IF_ERROR(r.Keys(n, {"net"}, {"kind", "size", "phase", "gamma"}));
    FB_RETURN_IF_ERROR(r.String(n, {"net"}, "kind", &cfg.net.kind));
    FB_RETURN_IF_ERROR(r.OneOf({"net"}, "kind", cfg.net.kind,
                               {"circle", "random", "axis", "deterministic"}));
    FB_RETURN_IF_ERROR(r.Int(n, {"net"}, "size", &cfg.net.size));
    FB_RETURN_IF_ERROR(
        Check(r, cfg.net.size >= 2, {"net", "size"}, "must be >= 2"));
    FB_RETURN_IF_ERROR(r.Number(n, {"net"}, "phase", &cfg.net.phase));
    FB_RETURN_IF_ERROR(r.Number(n, {"net"}, "gamma", &cfg.net.gamma));
    FB_RETURN_IF_ERROR(
        Check(r, cfg.net.gamma > 0.0, {"net", "gamma"}, "must be > 0"));
  }
  if (cfg.net.kind == "circle" && cfg.distribution.d != 2) {
    return r.Fail({"net", "kind"}, "circle nets need d = 2");
  }

  if (root.contains("params")) {
    const Json& p = root.at("params");
    FB_RETURN_IF_ERROR(r.Keys(p, {"params"},
                              {"kind", "r_min", "r_max", "r", "l", "b"}));
    FB_RETURN_IF_ERROR(r.String(p, {"params"}, "kind", &cfg.params.kind));
    FB_RETURN_IF_ERROR(r.OneOf({"params"}, "kind", cfg.params.kind,
                               {"gaussian", "logconcave", "explicit"}));
    AdmissibleParams& e = cfg.params.explicit_params;
    e.q = cfg.q;
    if (cfg.params.kind == "explicit") {
      for (const char* key : {"r_min", "r_max", "r", "l", "b"}) {
        if (!p.contains(key)) {
          return r.Fail({"params", key}, "required for explicit params");
        }
      }
    }
    FB_RETURN_IF_ERROR(r.Number(p, {"params"}, "r_min", &e.r_min));
    FB_RETURN_IF_ERROR(r.Number(p, {"params"}, "r_max", &e.r_max));
    FB_RETURN_IF_ERROR(r.Number(p, {"params"}, "r", &e.r));
    FB_RETURN_IF_ERROR(r.Number(p, {"params"}, "l", &e.l));
    FB_RETURN_IF_ERROR(r.Number(p, {"params"}, "b", &e.b));
    if (cfg.params.kind == "explicit") {
      auto st = ValidateParams(e);
      if (!st.ok()) return r.Fail({"params"}, std::string(st.message()));
    }
  }

  if (root.contains("constants")) {
    const Json& c = root.at("constants");
    FB_RETURN_IF_ERROR(r.Keys(
        c, {"constants"},
        {"c_w", "c_eta", "c_k", "c_stat", "c_priv", "c_cap"}));
    FB_RETURN_IF_ERROR(r.Number(c, {"constants"}, "c_w", &cfg.c_w));
    FB_RETURN_IF_ERROR(r.Number(c, {"constants"}, "c_eta", &cfg.c_eta));
    FB_RETURN_IF_ERROR(r.Number(c, {"constants"}, "c_k", &cfg.c_k));
    FB_RETURN_IF_ERROR(
        r.Number(c, {"constants"}, "c_stat", &cfg.sample_size.c_stat));
    FB_RETURN_IF_ERROR(
        r.Number(c, {"constants"}, "c_priv", &cfg.sample_size.c_priv));
    FB_RETURN_IF_ERROR(
        r.Number(c, {"constants"}, "c_cap", &cfg.sample_size.c_cap));
    for (const auto& [key, value] : c.items()) {
      FB_RETURN_IF_ERROR(Check(r, value.get<double>() > 0.0,
                               {"constants", key}, "must be > 0"));
    }
    cfg.sample_size.c_w = cfg.c_w;
  }

  if (root.contains("langevin")) {
    const Json& l = root.at("langevin");
    FB_RETURN_IF_ERROR(
        r.Keys(l, {"langevin"}, {"k", "eta", "batch_policy"}));
    if (l.contains("k") && !l.at("k").is_null()) {
      int64_t k = 0;
      FB_RETURN_IF_ERROR(r.Integer(l, {"langevin"}, "k", &k));
      FB_RETURN_IF_ERROR(Check(r, k >= 0, {"langevin", "k"}, "must be >= 0"));
      cfg.langevin_k = k;
    }
    if (l.contains("eta") && !l.at("eta").is_null()) {
      double eta = 0.0;
      FB_RETURN_IF_ERROR(r.Number(l, {"langevin"}, "eta", &eta));
      FB_RETURN_IF_ERROR(
          Check(r, eta >= 0.0, {"langevin", "eta"}, "must be >= 0"));
      cfg.langevin_eta = eta;
    }
    FB_RETURN_IF_ERROR(
        r.String(l, {"langevin"}, "batch_policy", &cfg.batch_policy));
    FB_RETURN_IF_ERROR(r.OneOf({"langevin"}, "batch_policy", cfg.batch_policy,
                               {"gate-only", "strict"}));
  }

  FB_RETURN_IF_ERROR(r.Int(root, {}, "trials", &cfg.trials));
  FB_RETURN_IF_ERROR(
      Check(r, cfg.trials >= 1 && cfg.trials <= 2048, {"trials"},
            "must lie in [1, 2048]"));
  FB_RETURN_IF_ERROR(
      r.Int(root, {}, "steiner_directions", &cfg.steiner_directions));
  FB_RETURN_IF_ERROR(Check(r, cfg.steiner_directions >= 1,
                           {"steiner_directions"}, "must be >= 1"));

  if (root.contains("point")) {
    const Json& p = root.at("point");
    if (!p.is_array()) return r.Fail({"point"}, "expected an array");
    for (size_t i = 0; i < p.size(); ++i) {
      if (!p[i].is_number()) {
        return r.Fail({"point", absl::StrCat("[", i, "]")},
                      "expected a number");
      }
      cfg.point.push_back(p[i].get<double>());
    }
    if (!cfg.point.empty() && static_cast<int>(cfg.point.size()) != cfg.distribution.d) {
      return r.Fail({"point"}, absl::StrCat("expected ", cfg.distribution.d,
                                            " coordinates"));
    }
  }

  if (root.contains("audit")) {
    const Json& a = root.at("audit");
    FB_RETURN_IF_ERROR(r.Keys(a, {"audit"}, {"suite"}));
    FB_RETURN_IF_ERROR(r.String(a, {"audit"}, "suite", &cfg.audit_suite));
    FB_RETURN_IF_ERROR(r.OneOf({"audit"}, "suite", cfg.audit_suite,
                               {"extension", "mechanism"}));
  }

  if (root.contains("thresholds")) {
    const Json& t = root.at("thresholds");
    FB_RETURN_IF_ERROR(
        r.Keys(t, {"thresholds"}, {"max_failure_rate", "max_w2"}));
    if (t.contains("max_failure_rate") && !t.at("max_failure_rate").is_null()) {
      double v = 0.0;
      FB_RETURN_IF_ERROR(r.Number(t, {"thresholds"}, "max_failure_rate", &v));
      cfg.thresholds.max_failure_rate = v;
    }
    if (t.contains("max_w2") && !t.at("max_w2").is_null()) {
      double v = 0.0;
      FB_RETURN_IF_ERROR(r.Number(t, {"thresholds"}, "max_w2", &v));
      cfg.thresholds.max_w2 = v;
    }
  }
  return cfg;
}

std::string CanonicalConfig(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["seed"] = cfg.seed.has_value() ? nlohmann::ordered_json(*cfg.seed)
                                   : nlohmann::ordered_json(nullptr);
  j["distribution"] = {
      {"kind", std::string(DistributionKindName(cfg.distribution.kind))},
      {"d", cfg.distribution.d},
      {"n", cfg.n}};
  j["input"] = cfg.input;
  j["q"] = cfg.q;
  j["epsilon"] = cfg.epsilon;
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["net"] = {{"kind", cfg.net.kind},
              {"size", cfg.net.size},
              {"phase", cfg.net.phase},
              {"gamma", cfg.net.gamma}};
  const AdmissibleParams& e = cfg.params.explicit_params;
  j["params"] = {{"kind", cfg.params.kind}, {"r_min", e.r_min},
                 {"r_max", e.r_max},        {"r", e.r},
                 {"l", e.l},                {"b", e.b}};
  j["constants"] = {{"c_w", cfg.c_w},
                    {"c_eta", cfg.c_eta},
                    {"c_k", cfg.c_k},
                    {"c_stat", cfg.sample_size.c_stat},
                    {"c_priv", cfg.sample_size.c_priv},
                    {"c_cap", cfg.sample_size.c_cap}};
  nlohmann::ordered_json lang;
  lang["k"] = cfg.langevin_k.has_value() ? nlohmann::ordered_json(*cfg.langevin_k)
                                         : nlohmann::ordered_json(nullptr);
  lang["eta"] = cfg.langevin_eta.has_value()
                    ? nlohmann::ordered_json(*cfg.langevin_eta)
                    : nlohmann::ordered_json(nullptr);
  lang["batch_policy"] = cfg.batch_policy;
  j["langevin"] = lang;
  j["trials"] = cfg.trials;
  j["steiner_directions"] = cfg.steiner_directions;
  j["point"] = cfg.point;
  j["audit"] = {{"suite", cfg.audit_suite}};
  nlohmann::ordered_json th;
  th["max_failure_rate"] =
      cfg.thresholds.max_failure_rate.has_value()
          ? nlohmann::ordered_json(*cfg.thresholds.max_failure_rate)
          : nlohmann::ordered_json(nullptr);
  th["max_w2"] = cfg.thresholds.max_w2.has_value()
                     ? nlohmann::ordered_json(*cfg.thresholds.max_w2)
                     : nlohmann::ordered_json(nullptr);
  j["thresholds"] = th;
  return j.dump();
}

std::string ConfigDigest(const ExperimentConfig& cfg) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : CanonicalConfig(cfg)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace floatbody::harness
