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

#ifndef QADAPT_TRACE_IO_HPP
#define QADAPT_TRACE_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "qadapt/protocol.hpp"

namespace qadapt {

inline constexpr int kTraceSchemaVersion = 1;
inline constexpr const char *kTraceCsvHeader =
    "k,xi_alpha,xi_beta,alpha,beta,m,delta,fidelity_shot,fidelity_exact";

nlohmann::json environment_to_json(const EnvironmentSpec &env);
/// Accepts a built-in label ("e1".."e6") or an object with "label" and
/// "preparation": [{"gate": "RY", "angle": 1.0}, ...].
EnvironmentSpec environment_from_json(const nlohmann::json &j);
EnvironmentSpec load_environment_file(const std::filesystem::path &path);

nlohmann::json noise_to_json(const NoiseParams &noise);
/// Accepts a preset/triple string or an object with the NoiseParams fields.
NoiseParams noise_from_json(const nlohmann::json &j);

nlohmann::json config_to_json(const ProtocolConfig &config);
/// Overlays the keys present in `j` on top of `base`; unknown keys are rejected.
ProtocolConfig config_from_json(const nlohmann::json &j, ProtocolConfig base = {});

void write_records_csv(std::ostream &out, const std::vector<IterationRecord> &records);
std::vector<IterationRecord> read_records_csv(std::istream &in);

struct TraceFiles {
  std::filesystem::path csv;
  std::filesystem::path sidecar;
};

/// File stem used for a run: "<env label>_seed<seed>".
std::string trace_stem(const ProtocolConfig &config);

/// Writes <stem>.csv (per-iteration records) and <stem>.json (schema
/// version, config, final values) into `dir`.
TraceFiles write_trace(const std::filesystem::path &dir, const Trace &trace);

/// Reads a trace back from its JSON sidecar. Throws std::runtime_error on
/// an unknown schema version or malformed content.
Trace read_trace(const std::filesystem::path &sidecar);

}  // namespace qadapt

#endif  // QADAPT_TRACE_IO_HPP
