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

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "harness/commands.h"

int main(int argc, char** argv) {
  using floatbody::harness::OutputFormat;
  CLI::App app{"floatbody: private floating-body experiments"};
  app.require_subcommand(1);

  std::string config;
  std::optional<uint64_t> seed;
  floatbody::harness::RunOptions opts;
  const std::map<std::string, OutputFormat> formats = {
      {"json", OutputFormat::kJson},
      {"csv", OutputFormat::kCsv},
      {"both", OutputFormat::kBoth}};

  for (const std::string& name : floatbody::harness::CommandNames()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " command");
    sub->add_option("--config", config, "experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "master seed, overrides the config");
    sub->add_option("--out", opts.out_dir, "output directory")
        ->capture_default_str();
    sub->add_option("--threads", opts.threads, "worker threads")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    sub->add_option("--format", opts.format, "report format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->default_str("both");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : floatbody::harness::kExitError;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  return floatbody::harness::RunCli(command, config, seed, opts);
}
