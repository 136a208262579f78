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

#ifndef FLOATBODY_TOOLS_HARNESS_CONFIG_H_
#define FLOATBODY_TOOLS_HARNESS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "floatbody/admissible.h"
#include "floatbody/distribution.h"
#include "floatbody/sample_size.h"
#include "floatbody/types.h"

namespace floatbody::harness {

struct NetConfig {
  // "circle" (d = 2), "random", "axis" or "deterministic" (d <= 3).
  std::string kind = "circle";
  int size = 16;
  double phase = 0.0;
  // Resolution of the deterministic net.
  double gamma = 0.5;
};

struct ParamsConfig {
  // "gaussian", "logconcave" or "explicit".
  std::string kind = "gaussian";
  AdmissibleParams explicit_params;
};

struct Thresholds {
  // Largest tolerated fraction of trials whose error exceeds alpha; unset
  // means beta + 3 sqrt(beta / trials).
  std::optional<double> max_failure_rate;
  // Largest tolerated (1/d) W2^2 for the sampler; unset means 9 alpha.
  std::optional<double> max_w2;
};

struct ExperimentConfig {
  std::optional<uint64_t> seed;
  DistributionSpec distribution;
  int64_t n = 1000;
  // Headerless data CSV; when empty the sample is drawn from distribution.
  std::string input;
  double q = 0.75;
  double epsilon = 1.0;
  double alpha = 0.1;
  double beta = 0.1;
  NetConfig net;
  ParamsConfig params;
  double c_w = 4.0;
  double c_eta = 0.5;
  double c_k = 2.0;
  SampleSizeConstants sample_size;
  // Explicit Langevin step count and step size; unset uses the defaults
  // derived from alpha, c_eta and c_k.
  std::optional<int64_t> langevin_k;
  std::optional<double> langevin_eta;
  // "gate-only" or "strict".
  std::string batch_policy = "gate-only";
  int trials = 20;
  int steiner_directions = 256;
  Point point;
  // "extension" or "mechanism".
  std::string audit_suite = "extension";
  Thresholds thresholds;
};

// Parses and validates a JSON config. Errors are kInvalidConfig with the
// JSON key path and, when it can be located, the line in the text.
absl::StatusOr<ExperimentConfig> ParseConfig(std::string_view text);

// Canonical JSON of a config (fixed key order, every field present).
std::string CanonicalConfig(const ExperimentConfig& cfg);

// FNV-1a of the canonical form, as 16 hex digits.
std::string ConfigDigest(const ExperimentConfig& cfg);

}  // namespace floatbody::harness

#endif  // FLOATBODY_TOOLS_HARNESS_CONFIG_H_
