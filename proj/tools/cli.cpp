// Copyright 2026 The qadapt Authors
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

#include "cli.hpp"

#include <filesystem>
#include <numbers>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qadapt/format.hpp"
#include "qadapt/harness.hpp"
#include "qadapt/trace_io.hpp"

namespace qadapt::cli {
namespace {

namespace fs = std::filesystem;

/// Flags shared by `run` and `suite`. Only flags the user actually passed
/// override values loaded from --config.
struct RunFlags {
  std::string config_file;
  double epsilon = 0.95;
  std::int64_t iterations = 140;
  std::int64_t shots = 8192;
  double delta0 = 4.0 * std::numbers::pi;
  std::uint64_t seed = 1;
  std::string noise = "ideal";
  std::string out = "out";

  CLI::Option *epsilon_opt = nullptr;
  CLI::Option *iterations_opt = nullptr;
  CLI::Option *shots_opt = nullptr;
  CLI::Option *delta0_opt = nullptr;
  CLI::Option *seed_opt = nullptr;
  CLI::Option *noise_opt = nullptr;
};

void add_run_flags(CLI::App &app, RunFlags &flags) {
  app.add_option("--config", flags.config_file, "JSON config file; explicit flags override it")
      ->check(CLI::ExistingFile);
  flags.epsilon_opt = app.add_option("--epsilon", flags.epsilon, "reward factor in (0, 1)");
  flags.iterations_opt = app.add_option("--iterations", flags.iterations, "iterations N");
  flags.shots_opt = app.add_option("--shots", flags.shots, "estimator shots per iteration");
  flags.delta0_opt = app.add_option("--delta0", flags.delta0, "initial exploration range");
  flags.seed_opt = app.add_option("--seed", flags.seed, "RNG seed");
  flags.noise_opt =
      app.add_option("--noise", flags.noise, "ideal | device-default | p_gate1,p_gate2,p_readout");
  app.add_option("--out", flags.out, "output directory")->capture_default_str();
}

EnvironmentSpec resolve_environment(const std::string &spec) {
  for (const std::string &label : env_labels()) {
    if (spec == label) return env_library(label);
  }
  if (fs::exists(spec)) return load_environment_file(spec);
  throw std::invalid_argument("--env: '" + spec + "' is neither e1..e6 nor a readable file");
}

ProtocolConfig build_config(const RunFlags &flags) {
  ProtocolConfig config;
  config.environment = env_library("e1");
  if (!flags.config_file.empty()) {
    std::ifstream in(flags.config_file);
    if (!in) throw std::invalid_argument("cannot open config " + flags.config_file);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
      throw std::invalid_argument("bad config " + flags.config_file + ": " + e.what());
    }
    config = config_from_json(j, config);
  }
  if (flags.epsilon_opt->count()) config.epsilon = flags.epsilon;
  if (flags.iterations_opt->count()) config.iterations = flags.iterations;
  if (flags.shots_opt->count()) config.shots = flags.shots;
  if (flags.delta0_opt->count()) config.delta0 = flags.delta0;
  if (flags.seed_opt->count()) config.seed = flags.seed;
  if (flags.noise_opt->count()) config.noise = parse_noise(flags.noise);
  return config;
}

std::vector<std::string> split_list(const std::string &text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    if (comma > start) items.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return items;
}

std::uint64_t parse_u64(const std::string &text) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad seed '" + text + "'");
  return v;
}

/// "--seeds 5" means five consecutive seeds starting at --seed; a comma
/// anywhere makes it an explicit list.
std::vector<std::uint64_t> resolve_seeds(const std::string &text, std::uint64_t first) {
  std::vector<std::uint64_t> seeds;
  if (text.find(',') != std::string::npos) {
    for (const std::string &item : split_list(text)) seeds.push_back(parse_u64(item));
  } else {
    const std::uint64_t count = parse_u64(text);
    if (count == 0) throw std::invalid_argument("--seeds: count must be positive");
    for (std::uint64_t i = 0; i < count; ++i) seeds.push_back(first + i);
  }
  return seeds;
}

void print_aggregates(std::ostream &out, const SummaryReport &report) {
  for (const EnvAggregate &a : report.per_env) {
    out << a.env_label << ": converged " << a.converged << "/" << a.runs;
    if (a.fidelity_shot) out << ", median fidelity " << format_double(a.fidelity_shot->median);
    if (a.median_iterations_to_converge) {
      out << ", median iterations to converge " << format_double(*a.median_iterations_to_converge);
    }
    out << '\n';
  }
}

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Measurement-based adaptation with quantum reinforcement learning", "qadapt"};
  app.require_subcommand(1);

  RunFlags run_flags;
  std::string env_spec = "e1";
  CLI::App *run_cmd = app.add_subcommand("run", "run one seeded realization and write its trace");
  run_cmd->add_option("--env", env_spec, "e1..e6 or a custom environment JSON file");
  add_run_flags(*run_cmd, run_flags);

  RunFlags suite_flags;
  std::string envs_list = "e1,e2,e3,e4,e5,e6";
  std::string seeds_text = "10";
  CLI::App *suite_cmd = app.add_subcommand("suite", "seed sweep over several environments");
  suite_cmd->add_option("--envs", envs_list, "comma-separated e1..e6 labels or files")
      ->capture_default_str();
  suite_cmd->add_option("--seeds", seeds_text, "seed count (from --seed) or comma-separated list")
      ->capture_default_str();
  add_run_flags(*suite_cmd, suite_flags);

  std::string summarize_dir;
  CLI::App *sum_cmd = app.add_subcommand("summarize", "recompute aggregates from stored traces");
  sum_cmd->add_option("--in", summarize_dir, "directory of trace files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) {
      ProtocolConfig config;
      try {
        config = build_config(run_flags);
        if (run_cmd->count("--env") || run_flags.config_file.empty()) {
          config.environment = resolve_environment(env_spec);
        }
        config.validate();
      } catch (const std::exception &e) {
        throw UsageError(e.what());
      }
      ExperimentSuite suite{{config}, {config.seed}, run_flags.out, 1};
      const SuiteResult result = run_suite(suite);
      const SummaryRow &row = result.report.rows.front();
      if (!row.ok()) {
        err << "qadapt: run failed: " << row.error << '\n';
        return kExitRuntime;
      }
      out << "env " << row.env_label << " seed " << row.seed << ": final delta "
          << format_double(row.final_delta) << ", fidelity (shots) "
          << format_double(row.final_fidelity_shot) << ", fidelity (exact) "
          << format_double(row.final_fidelity_exact) << (row.converged ? ", converged" : "")
          << '\n';
      out << "trace: " << (fs::path(run_flags.out) / (trace_stem(config) + ".csv")).string()
          << '\n';
      return kExitOk;
    }

    if (*suite_cmd) {
      ExperimentSuite suite;
      try {
        const ProtocolConfig base = build_config(suite_flags);
        for (const std::string &item : split_list(envs_list)) {
          ProtocolConfig c = base;
          c.environment = resolve_environment(item);
          c.validate();
          suite.configs.push_back(std::move(c));
        }
        suite.seeds = resolve_seeds(seeds_text, base.seed);
        suite.output_dir = suite_flags.out;
        suite.validate();
      } catch (const std::exception &e) {
        throw UsageError(e.what());
      }
      const SuiteResult result = run_suite(suite);
      print_aggregates(out, result.report);
      int failed = 0;
      for (const SummaryRow &row : result.report.rows) failed += row.ok() ? 0 : 1;
      if (failed) {
        err << "qadapt: " << failed << " run(s) failed; see summary.csv\n";
        return kExitRuntime;
      }
      return kExitOk;
    }

    if (*sum_cmd) {
      const SummaryReport report = summarize_directory(summarize_dir);
      write_summary_csv(fs::path(summarize_dir) / "summary.csv", report.rows);
      write_aggregate_csv(fs::path(summarize_dir) / "aggregate.csv", report.per_env);
      print_aggregates(out, report);
      return kExitOk;
    }
  } catch (const UsageError &e) {
    err << "qadapt: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "qadapt: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace qadapt::cli
