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

#ifndef QADAPT_PROTOCOL_HPP
#define QADAPT_PROTOCOL_HPP

#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "qadapt/environment.hpp"
#include "qadapt/noise.hpp"
#include "qadapt/qcore.hpp"
#include "qadapt/rng.hpp"

namespace qadapt {

/// Reward shrinks the exploration range by epsilon, punishment grows it by 1/epsilon.
struct RewardParams {
  double epsilon = 0.95;

  explicit RewardParams(double eps);
  double reward_factor() const { return epsilon; }
  double punish_factor() const { return 1.0 / epsilon; }
};

struct ProtocolConfig {
  double epsilon = 0.95;
  double delta0 = 4.0 * std::numbers::pi;
  std::int64_t iterations = 140;
  std::int64_t shots = 8192;
  std::uint64_t seed = 1;
  NoiseParams noise;
  EnvironmentSpec environment;
  /// Optional upper clamp on the exploration range; off by default.
  std::optional<double> delta_max;

  void validate() const;
  bool operator==(const ProtocolConfig &) const = default;
};

/// Accumulated agent frame U and its adjoint.
struct AgentState {
  Unitary2 u_acc;
  Unitary2 u_acc_dagger;
};

struct IterationRecord {
  std::int64_t k = 0;
  double xi_alpha = 0.0;
  double xi_beta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  int m = 0;
  double delta_after = 0.0;
  double fidelity_shot = 0.0;
  double fidelity_exact = 0.0;

  bool operator==(const IterationRecord &) const = default;
};

struct Trace {
  ProtocolConfig config;
  std::vector<IterationRecord> records;
  double final_delta = 0.0;
  double final_fidelity_shot = 0.0;
  double final_fidelity_exact = 0.0;

  bool operator==(const Trace &) const = default;
};

struct ActionDraw {
  double xi_alpha = 0.0;
  double xi_beta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// xi_alpha then xi_beta, each uniform on [-1/2, 1/2); angles are xi * delta.
ActionDraw draw_action(Rng &rng, double delta);

/// m = 0 leaves the agent untouched; m = 1 left-multiplies U(alpha, beta)
/// onto the accumulated frame. The frame is pulled back onto the unitary
/// group when its defect exceeds 1e-9.
AgentState conditional_update(const AgentState &agent, int m, double alpha, double beta);

/// epsilon * delta for m = 0, delta / epsilon for m = 1. Throws
/// std::invalid_argument for delta <= 0.
double reward_update(double delta, int m, const RewardParams &params);

struct Measurement {
  int m = 0;
  double p0 = 1.0;  // register probabilities before the measurement
  double p1 = 0.0;
};

/// One pass of the information-extraction circuit on a fresh
/// |0>_A |0>_R |0>_E: prepare the environment, rotate it by U^dagger, CNOT
/// with E as control and R as target, measure R.
Measurement run_iteration(const AgentState &agent, const EnvironmentSpec &env, Rng &rng,
                          const NoiseParams &noise);

/// Iteration-by-iteration driver for run_protocol; exposes the intermediate
/// agent frame and register probabilities that the Trace does not store.
class ProtocolRun {
 public:
  explicit ProtocolRun(ProtocolConfig config);

  struct Step {
    IterationRecord record;
    Measurement measurement;
    AgentState agent;  // frame in effect during this iteration's measurements
  };

  bool done() const { return next_k_ > config_.iterations; }
  Step step();
  Trace finish() &&;

  const AgentState &agent() const { return agent_; }
  double delta() const { return delta_; }
  const ProtocolConfig &config() const { return config_; }

 private:
  ProtocolConfig config_;
  RewardParams reward_;
  Rng rng_;
  AgentState agent_;
  double delta_;
  int last_m_ = 0;
  std::int64_t next_k_ = 1;
  std::vector<IterationRecord> records_;
};

Trace run_protocol(const ProtocolConfig &config);

/// Value function of a run: the final exploration range. Throws
/// std::invalid_argument on an empty trace.
double value_function(const Trace &trace);

}  // namespace qadapt

#endif  // QADAPT_PROTOCOL_HPP
