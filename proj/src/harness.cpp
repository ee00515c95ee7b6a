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

#include "qadapt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "qadapt/format.hpp"
#include "qadapt/trace_io.hpp"

namespace qadapt {
namespace {

constexpr double kPi = std::numbers::pi;

std::string optional_field(const std::optional<double> &v) {
  return v ? format_double(*v) : "none";
}

bool row_order(const SummaryRow &a, const SummaryRow &b) {
  return std::tie(a.env_label, a.seed) < std::tie(b.env_label, b.seed);
}

void ensure_writable(const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw std::runtime_error("output directory " + dir.string() + " cannot be created");
  }
  const auto probe = dir / ".qadapt_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw std::runtime_error("output directory " + dir.string() + " is not writable");
  }
  std::filesystem::remove(probe, ec);
}

}  // namespace

EnvironmentSpec env_library(std::string_view label) {
  using G = GateKind;
  if (label == "e1") return {"e1", {{G::RY, 4 * kPi / 9}, {G::RZ, kPi / 3}}};
  if (label == "e2") return {"e2", {{G::RY, 5 * kPi / 9}, {G::RZ, kPi / 4}}};
  if (label == "e3") return {"e3", {{G::RY, kPi / 3}}};
  if (label == "e4") return {"e4", {{G::RY, 2 * kPi / 3}}};
  if (label == "e5") return {"e5", {{G::H, 0.0}, {G::RZ, kPi / 2}}};
  if (label == "e6") return {"e6", {{G::H, 0.0}}};
  throw std::invalid_argument("unknown environment '" + std::string(label) +
                              "' (expected e1..e6)");
}

const std::vector<std::string> &env_labels() {
  static const std::vector<std::string> labels{"e1", "e2", "e3", "e4", "e5", "e6"};
  return labels;
}

void ExperimentSuite::validate() const {
  if (configs.empty()) throw std::invalid_argument("suite: no configs");
  if (seeds.empty()) throw std::invalid_argument("suite: no seeds");
  std::set<std::string> labels;
  for (const ProtocolConfig &c : configs) {
    if (!labels.insert(c.environment.label).second) {
      throw std::invalid_argument("suite: duplicate environment label '" + c.environment.label +
                                  "'");
    }
  }
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw std::invalid_argument("suite: duplicate seeds");
  }
}

std::optional<Quantiles> quantiles(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const auto at = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  return Quantiles{values.front(), at(0.25), at(0.5), at(0.75), values.back()};
}

SummaryRow summary_row(const Trace &trace) {
  if (trace.records.empty()) throw std::invalid_argument("summary_row: empty trace");
  SummaryRow row;
  row.env_label = trace.config.environment.label;
  row.seed = trace.config.seed;
  row.final_delta = trace.final_delta;
  row.final_fidelity_shot = trace.final_fidelity_shot;
  row.final_fidelity_exact = trace.final_fidelity_exact;
  row.converged = row.final_delta < kConvergedDelta;
  if (row.converged) {
    std::int64_t first = trace.records.back().k;
    for (auto it = trace.records.rbegin(); it != trace.records.rend(); ++it) {
      if (!(it->delta_after < kConvergedDelta)) break;
      first = it->k;
    }
    row.iterations_to_converge = first;
  }
  return row;
}

SummaryReport summarize_rows(std::vector<SummaryRow> rows) {
  if (rows.empty()) throw std::invalid_argument("summarize: no traces");
  std::sort(rows.begin(), rows.end(), row_order);

  SummaryReport report;
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t j = i;
    EnvAggregate agg;
    agg.env_label = rows[i].env_label;
    std::vector<double> iters, f_shot, f_exact;
    for (; j < rows.size() && rows[j].env_label == agg.env_label; ++j) {
      const SummaryRow &r = rows[j];
      ++agg.runs;
      if (!r.ok() || !r.converged) continue;
      ++agg.converged;
      if (r.iterations_to_converge) iters.push_back(static_cast<double>(*r.iterations_to_converge));
      f_shot.push_back(r.final_fidelity_shot);
      f_exact.push_back(r.final_fidelity_exact);
    }
    agg.convergence_rate = static_cast<double>(agg.converged) / static_cast<double>(agg.runs);
    if (auto q = quantiles(iters)) agg.median_iterations_to_converge = q->median;
    agg.fidelity_shot = quantiles(std::move(f_shot));
    agg.fidelity_exact = quantiles(std::move(f_exact));
    report.per_env.push_back(std::move(agg));
    i = j;
  }
  report.rows = std::move(rows);
  return report;
}

SummaryReport summarize(const std::vector<Trace> &traces) {
  if (traces.empty()) throw std::invalid_argument("summarize: no traces");
  std::vector<SummaryRow> rows;
  rows.reserve(traces.size());
  for (const Trace &t : traces) rows.push_back(summary_row(t));
  return summarize_rows(std::move(rows));
}

void write_summary_csv(const std::filesystem::path &path, const std::vector<SummaryRow> &rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "env,seed,final_delta,final_fidelity_shot,final_fidelity_exact,converged,"
         "iterations_to_converge,status\n";
  for (const SummaryRow &r : rows) {
    out << r.env_label << ',' << r.seed << ',';
    if (r.ok()) {
      out << format_double(r.final_delta) << ',' << format_double(r.final_fidelity_shot) << ','
          << format_double(r.final_fidelity_exact) << ',' << (r.converged ? 1 : 0) << ','
          << (r.iterations_to_converge ? std::to_string(*r.iterations_to_converge) : "none")
          << ",ok\n";
    } else {
      std::string message = r.error;
      std::replace(message.begin(), message.end(), ',', ';');
      std::replace(message.begin(), message.end(), '\n', ' ');
      out << ",,,0,none,error: " << message << '\n';
    }
  }
  if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
}

void write_aggregate_csv(const std::filesystem::path &path,
                         const std::vector<EnvAggregate> &aggregates) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "env,runs,converged,convergence_rate,median_iterations_to_converge,"
         "fidelity_shot_min,fidelity_shot_q25,fidelity_shot_median,fidelity_shot_q75,"
         "fidelity_shot_max,fidelity_exact_median\n";
  for (const EnvAggregate &a : aggregates) {
    out << a.env_label << ',' << a.runs << ',' << a.converged << ','
        << format_double(a.convergence_rate) << ','
        << optional_field(a.median_iterations_to_converge);
    if (a.fidelity_shot) {
      const Quantiles &q = *a.fidelity_shot;
      out << ',' << format_double(q.min) << ',' << format_double(q.q25) << ','
          << format_double(q.median) << ',' << format_double(q.q75) << ','
          << format_double(q.max);
    } else {
      out << ",none,none,none,none,none";
    }
    out << ','
        << optional_field(a.fidelity_exact ? std::optional<double>(a.fidelity_exact->median)
                                           : std::nullopt)
        << '\n';
  }
  if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
}

SuiteResult run_suite(const ExperimentSuite &suite) {
  suite.validate();
  const bool write_files = !suite.output_dir.empty();
  if (write_files) ensure_writable(suite.output_dir);

  struct Job {
    ProtocolConfig config;
    std::optional<Trace> trace;
    SummaryRow row;
  };
  std::vector<Job> jobs;
  for (const ProtocolConfig &base : suite.configs) {
    for (std::uint64_t seed : suite.seeds) {
      Job job;
      job.config = base;
      job.config.seed = seed;
      jobs.push_back(std::move(job));
    }
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job &a, const Job &b) {
    return std::tie(a.config.environment.label, a.config.seed) <
           std::tie(b.config.environment.label, b.config.seed);
  });

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      Job &job = jobs[i];
      try {
        Trace trace = run_protocol(job.config);
        if (write_files) write_trace(suite.output_dir, trace);
        job.row = summary_row(trace);
        job.trace = std::move(trace);
      } catch (const std::exception &e) {
        job.row = SummaryRow{};
        job.row.env_label = job.config.environment.label;
        job.row.seed = job.config.seed;
        job.row.error = e.what();
      }
    }
  };

  unsigned count = suite.workers ? suite.workers : std::thread::hardware_concurrency();
  count = std::clamp<unsigned>(count, 1, static_cast<unsigned>(jobs.size()));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  }

  SuiteResult result;
  std::vector<SummaryRow> rows;
  rows.reserve(jobs.size());
  for (Job &job : jobs) {
    rows.push_back(job.row);
    if (job.trace) result.traces.push_back(std::move(*job.trace));
  }
  result.report = summarize_rows(std::move(rows));
  if (write_files) {
    write_summary_csv(suite.output_dir / "summary.csv", result.report.rows);
    write_aggregate_csv(suite.output_dir / "aggregate.csv", result.report.per_env);
  }
  return result;
}

SummaryReport summarize_directory(const std::filesystem::path &dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw std::runtime_error("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> sidecars;
  for (const auto &entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && entry.path().extension() == ".json" &&
        name.find("_seed") != std::string::npos) {
      sidecars.push_back(entry.path());
    }
  }
  std::sort(sidecars.begin(), sidecars.end());
  std::vector<Trace> traces;
  for (const auto &p : sidecars) traces.push_back(read_trace(p));
  if (traces.empty()) throw std::runtime_error("no trace files in " + dir.string());
  return summarize(traces);
}

}  // namespace qadapt
