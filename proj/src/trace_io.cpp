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

#include "qadapt/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qadapt/format.hpp"
#include "qadapt/harness.hpp"

namespace qadapt {
namespace {

using nlohmann::json;

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw std::runtime_error("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

json environment_to_json(const EnvironmentSpec &env) {
  json steps = json::array();
  for (const PrepStep &s : env.preparation) {
    steps.push_back({{"gate", std::string(gate_name(s.gate))}, {"angle", s.angle}});
  }
  return {{"label", env.label}, {"preparation", steps}};
}

EnvironmentSpec environment_from_json(const json &j) {
  if (j.is_string()) return env_library(j.get<std::string>());
  EnvironmentSpec env;
  env.label = j.value("label", std::string("custom"));
  for (const json &s : j.at("preparation")) {
    PrepStep step;
    step.gate = parse_gate_kind(s.at("gate").get<std::string>());
    step.angle = s.value("angle", 0.0);
    env.preparation.push_back(step);
  }
  env.validate();
  return env;
}

EnvironmentSpec load_environment_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open environment file " + path.string());
  try {
    return environment_from_json(json::parse(in));
  } catch (const json::exception &e) {
    throw std::runtime_error("bad environment file " + path.string() + ": " + e.what());
  }
}

json noise_to_json(const NoiseParams &noise) {
  return {{"p_gate1", noise.p_gate1},
          {"p_gate2", noise.p_gate2},
          {"p_readout", noise.p_readout},
          {"enabled", noise.enabled}};
}

NoiseParams noise_from_json(const json &j) {
  if (j.is_string()) return parse_noise(j.get<std::string>());
  NoiseParams n;
  n.p_gate1 = j.at("p_gate1").get<double>();
  n.p_gate2 = j.at("p_gate2").get<double>();
  n.p_readout = j.at("p_readout").get<double>();
  n.enabled = j.at("enabled").get<bool>();
  n.validate();
  return n;
}

json config_to_json(const ProtocolConfig &config) {
  json j = {{"epsilon", config.epsilon},
            {"delta0", config.delta0},
            {"iterations", config.iterations},
            {"shots", config.shots},
            {"seed", config.seed},
            {"noise", noise_to_json(config.noise)},
            {"environment", environment_to_json(config.environment)}};
  j["delta_max"] = config.delta_max ? json(*config.delta_max) : json(nullptr);
  return j;
}

ProtocolConfig config_from_json(const json &j, ProtocolConfig base) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  for (const auto &[key, value] : j.items()) {
    if (key == "epsilon") {
      base.epsilon = value.get<double>();
    } else if (key == "delta0") {
      base.delta0 = value.get<double>();
    } else if (key == "iterations") {
      base.iterations = value.get<std::int64_t>();
    } else if (key == "shots") {
      base.shots = value.get<std::int64_t>();
    } else if (key == "seed") {
      base.seed = value.get<std::uint64_t>();
    } else if (key == "noise") {
      base.noise = noise_from_json(value);
    } else if (key == "environment") {
      base.environment = environment_from_json(value);
    } else if (key == "delta_max") {
      base.delta_max = value.is_null() ? std::nullopt : std::optional<double>(value.get<double>());
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return base;
}

void write_records_csv(std::ostream &out, const std::vector<IterationRecord> &records) {
  out << kTraceCsvHeader << '\n';
  for (const IterationRecord &r : records) {
    out << r.k << ',' << format_double(r.xi_alpha) << ',' << format_double(r.xi_beta) << ','
        << format_double(r.alpha) << ',' << format_double(r.beta) << ',' << r.m << ','
        << format_double(r.delta_after) << ',' << format_double(r.fidelity_shot) << ','
        << format_double(r.fidelity_exact) << '\n';
  }
}

std::vector<IterationRecord> read_records_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("trace csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceCsvHeader) throw std::runtime_error("trace csv: unexpected header '" + line + "'");

  std::vector<IterationRecord> records;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_commas(line);
    if (f.size() != 9) throw std::runtime_error("trace csv: expected 9 fields in '" + line + "'");
    IterationRecord r;
    r.k = parse_int(f[0]);
    r.xi_alpha = parse_double(f[1]);
    r.xi_beta = parse_double(f[2]);
    r.alpha = parse_double(f[3]);
    r.beta = parse_double(f[4]);
    r.m = static_cast<int>(parse_int(f[5]));
    r.delta_after = parse_double(f[6]);
    r.fidelity_shot = parse_double(f[7]);
    r.fidelity_exact = parse_double(f[8]);
    if (r.m != 0 && r.m != 1) throw std::runtime_error("trace csv: outcome must be 0 or 1");
    records.push_back(r);
  }
  return records;
}

std::string trace_stem(const ProtocolConfig &config) {
  return config.environment.label + "_seed" + std::to_string(config.seed);
}

TraceFiles write_trace(const std::filesystem::path &dir, const Trace &trace) {
  const std::string stem = trace_stem(trace.config);
  TraceFiles files{dir / (stem + ".csv"), dir / (stem + ".json")};

  std::ofstream csv(files.csv, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write " + files.csv.string());
  write_records_csv(csv, trace.records);

  const json sidecar = {{"schema_version", kTraceSchemaVersion},
                        {"records_file", files.csv.filename().string()},
                        {"config", config_to_json(trace.config)},
                        {"final",
                         {{"delta", trace.final_delta},
                          {"fidelity_shot", trace.final_fidelity_shot},
                          {"fidelity_exact", trace.final_fidelity_exact}}}};
  std::ofstream js(files.sidecar, std::ios::binary);
  if (!js) throw std::runtime_error("cannot write " + files.sidecar.string());
  js << sidecar.dump(2) << '\n';
  if (!csv.flush() || !js.flush()) throw std::runtime_error("write failed for " + stem);
  return files;
}

Trace read_trace(const std::filesystem::path &sidecar) {
  std::ifstream in(sidecar);
  if (!in) throw std::runtime_error("cannot open " + sidecar.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception &e) {
    throw std::runtime_error("malformed trace sidecar " + sidecar.string() + ": " + e.what());
  }
  const int version = j.value("schema_version", -1);
  if (version != kTraceSchemaVersion) {
    throw std::runtime_error("unsupported trace schema version " + std::to_string(version) +
                             " in " + sidecar.string());
  }

  Trace t;
  try {
    t.config = config_from_json(j.at("config"));
    const json &fin = j.at("final");
    t.final_delta = fin.at("delta").get<double>();
    t.final_fidelity_shot = fin.at("fidelity_shot").get<double>();
    t.final_fidelity_exact = fin.at("fidelity_exact").get<double>();
  } catch (const json::exception &e) {
    throw std::runtime_error("malformed trace sidecar " + sidecar.string() + ": " + e.what());
  }

  const auto csv_path = sidecar.parent_path() / j.at("records_file").get<std::string>();
  std::ifstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open " + csv_path.string());
  t.records = read_records_csv(csv);
  return t;
}

}  // namespace qadapt
