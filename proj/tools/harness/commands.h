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

#ifndef FLOATBODY_TOOLS_HARNESS_COMMANDS_H_
#define FLOATBODY_TOOLS_HARNESS_COMMANDS_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "harness/config.h"
#include "nlohmann/json.hpp"

namespace floatbody::harness {

// Exit codes of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitThresholdFailure = 2;

enum class OutputFormat { kJson, kCsv, kBoth };

struct RunOptions {
  int threads = 1;
  std::string out_dir = ".";
  OutputFormat format = OutputFormat::kBoth;
};

// Flat per-trial metrics: one header and one row per trial.
struct MetricsTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct CommandResult {
  // Everything reproducible: config digest, per-trial outputs, metrics,
  // ledger, thresholds and the pass flag.
  nlohmann::ordered_json record;
  MetricsTable metrics;
  bool pass = true;
  // Extra files written next to the reports (name, contents).
  std::vector<std::pair<std::string, std::string>> artifacts;
};

const std::vector<std::string>& CommandNames();

// Runs one command. Library and input errors come back as a status; a
// threshold miss is a successful result with pass = false.
absl::StatusOr<CommandResult> RunCommand(const std::string& command,
                                         const ExperimentConfig& cfg,
                                         const RunOptions& opts);

// Writes <out>/<command>_record.json, <out>/<command>_metrics.csv (per the
// format), the artifacts, and <out>/<command>_timing.json with the
// wall-clock time, which stays out of the record so that the record is
// byte-reproducible.
absl::Status WriteOutputs(const std::string& command,
                          const CommandResult& result, const RunOptions& opts,
                          double wall_seconds);

// Parses the config file, applies the seed override, runs and writes the
// reports. Returns the process exit code; errors are printed to stderr and
// recorded in <out>/<command>_record.json when the output directory is
// usable.
int RunCli(const std::string& command, const std::string& config_path,
           std::optional<uint64_t> seed, const RunOptions& opts);

}  // namespace floatbody::harness

#endif  // FLOATBODY_TOOLS_HARNESS_COMMANDS_H_
