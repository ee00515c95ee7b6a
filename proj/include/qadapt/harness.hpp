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

#ifndef QADAPT_HARNESS_HPP
#define QADAPT_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qadapt/protocol.hpp"

namespace qadapt {

/// The six benchmark environments, e1..e6.
EnvironmentSpec env_library(std::string_view label);
const std::vector<std::string> &env_labels();

/// Final exploration range below which a run counts as converged.
inline constexpr double kConvergedDelta = 0.5;

struct ExperimentSuite {
  std::vector<ProtocolConfig> configs;  // seed field is overridden per run
  std::vector<std::uint64_t> seeds;
  std::filesystem::path output_dir;  // empty: keep results in memory only
  unsigned workers = 0;              // 0: hardware concurrency

  void validate() const;
};

struct SummaryRow {
  std::string env_label;
  std::uint64_t seed = 0;
  double final_delta = 0.0;
  double final_fidelity_shot = 0.0;
  double final_fidelity_exact = 0.0;
  bool converged = false;
  /// First iteration after which the range stays below kConvergedDelta.
  std::optional<std::int64_t> iterations_to_converge;
  std::string error;  // non-empty when the run failed

  bool ok() const { return error.empty(); }
  bool operator==(const SummaryRow &) const = default;
};

struct Quantiles {
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;
};

/// Linear-interpolation quantiles; nullopt for an empty sample.
std::optional<Quantiles> quantiles(std::vector<double> values);

struct EnvAggregate {
  std::string env_label;
  std::int64_t runs = 0;
  std::int64_t converged = 0;
  double convergence_rate = 0.0;
  std::optional<double> median_iterations_to_converge;
  // Conditional on convergence.
  std::optional<Quantiles> fidelity_shot;
  std::optional<Quantiles> fidelity_exact;
};

struct SummaryReport {
  std::vector<SummaryRow> rows;  // sorted by env label, then seed
  std::vector<EnvAggregate> per_env;
};

SummaryRow summary_row(const Trace &trace);

/// Throws std::invalid_argument on empty input.
SummaryReport summarize(const std::vector<Trace> &traces);
SummaryReport summarize_rows(std::vector<SummaryRow> rows);

void write_summary_csv(const std::filesystem::path &path, const std::vector<SummaryRow> &rows);
void write_aggregate_csv(const std::filesystem::path &path,
                         const std::vector<EnvAggregate> &aggregates);

struct SuiteResult {
  std::vector<Trace> traces;  // successful runs, in summary-row order
  SummaryReport report;
};

/// Runs every (config, seed) pair on a bounded worker pool. With an output
/// directory, writes one trace per run plus summary.csv and aggregate.csv.
/// A failing run becomes a row with `error` set; the suite continues.
SuiteResult run_suite(const ExperimentSuite &suite);

/// Reads every trace sidecar in `dir` and summarizes them.
SummaryReport summarize_directory(const std::filesystem::path &dir);

}  // namespace qadapt

#endif  // QADAPT_HARNESS_HPP
