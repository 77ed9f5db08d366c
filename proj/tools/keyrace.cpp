// Copyright 2026 The keyrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "keyrace/cli.hpp"

namespace {

void add_model_flags(CLI::App* cmd, keyrace::cli::RunConfig& config) {
  cmd->add_option("--model", config.model, "canonical | gumbel1 | frechet2 | negexp | expmin")
      ->capture_default_str();
  cmd->add_option("--scale", config.scale_c, "scale c (> 0)")->capture_default_str();
  cmd->add_option("--offset", config.offset_d, "offset d (default: 0 gumbel1, 1 frechet2, -1 negexp)");
  cmd->add_option("--seed", config.seed, "64-bit seed")->capture_default_str();
}

// Opens `path` for reading, or hands back std::cin for "" and "-".
std::istream* open_input(const std::string& path, std::unique_ptr<std::ifstream>& holder) {
  if (path.empty() || path == "-") return &std::cin;
  holder = std::make_unique<std::ifstream>(path);
  return *holder ? holder.get() : nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace keyrace::cli;
  RunConfig config;
  std::string input;
  std::string output;

  CLI::App app{"keyrace: per-group discrete sampling by local keys and an associative max"};
  app.require_subcommand(1);

  auto* sample = app.add_subcommand("sample", "sample one label per group from an ID,QUAL,Strength CSV");
  add_model_flags(sample, config);
  sample->add_option("input", input, "input CSV (default: stdin)");
  sample->add_option("-o,--output", output, "output CSV (default: stdout)");
  sample->add_option("--replicates", config.replicates, "independent replicates")->capture_default_str();
  sample->add_option("--threads", config.threads, "worker threads")->capture_default_str();
  sample->add_flag("--inject-keys", config.inject_keys, "read keys from a fourth column instead of drawing");
  sample->add_flag("--with-key", config.with_key, "append the winning key column");

  auto* update = app.add_subcommand("update", "stream UPSERT/DELETE commands from stdin");
  add_model_flags(update, config);
  update->add_flag("--inject-keys", config.inject_keys, "UPSERT lines carry a fourth key field");
  update->add_option("--dump-table", config.dump_table, "write final rows with keys to this CSV");

  auto* validate = app.add_subcommand("validate", "run the statistical validation battery");
  add_model_flags(validate, config);
  validate->add_option("fixture", input, "optional ID,QUAL,Strength CSV checked under --model");
  validate->add_option("--replicates", config.replicates, "draws per fixture group (default 60000)");
  validate->add_option("--threads", config.threads, "worker threads")->capture_default_str();
  validate->add_flag("--quick", config.quick, "reduced sample sizes");

  auto* bench = app.add_subcommand("bench", "time key race against alias and inverse-CDF samplers");
  add_model_flags(bench, config);
  bench->add_option("--rows", config.bench_rows, "rows in the sampled table")->capture_default_str();
  bench->add_option("--groups", config.bench_groups, "groups in the sampled table")->capture_default_str();
  bench->add_option("--updates", config.bench_updates, "dynamic updates to stream")->capture_default_str();
  bench->add_option("--threads", config.threads, "worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }
  if (config.threads == 0) config.threads = 1;

  std::unique_ptr<std::ifstream> in_holder;
  if (*sample) {
    std::istream* in = open_input(input, in_holder);
    if (!in) {
      std::cerr << "error: cannot open " << input << '\n';
      return kParseError;
    }
    if (output.empty()) return cmd_sample(config, *in, std::cout, std::cerr);
    std::ofstream out(output);
    if (!out) {
      std::cerr << "error: cannot write " << output << '\n';
      return kParseError;
    }
    return cmd_sample(config, *in, out, std::cerr);
  }
  if (*update) return cmd_update(config, std::cin, std::cout, std::cerr);
  if (*validate) {
    std::istream* in = nullptr;
    if (!input.empty()) {
      in = open_input(input, in_holder);
      if (!in) {
        std::cerr << "error: cannot open " << input << '\n';
        return kParseError;
      }
    }
    return cmd_validate(config, in, std::cout, std::cerr);
  }
  return cmd_bench(config, std::cout, std::cerr);
}
