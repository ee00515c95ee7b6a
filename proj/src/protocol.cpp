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

#include "qadapt/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "qadapt/estimator.hpp"

namespace qadapt {
namespace {

constexpr double kUnitarityGuard = 1e-9;

}  // namespace

RewardParams::RewardParams(double eps) : epsilon(eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1), got " + std::to_string(eps));
  }
}

void ProtocolConfig::validate() const {
  RewardParams{epsilon};
  if (!(delta0 > 0.0) || !std::isfinite(delta0)) {
    throw std::invalid_argument("delta0 must be positive and finite");
  }
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (delta_max && !(*delta_max > 0.0)) throw std::invalid_argument("delta_max must be positive");
  noise.validate();
  environment.validate();
}

ActionDraw draw_action(Rng &rng, double delta) {
  ActionDraw a;
  a.xi_alpha = rng.uniform_half();
  a.xi_beta = rng.uniform_half();
  a.alpha = a.xi_alpha * delta;
  a.beta = a.xi_beta * delta;
  return a;
}

AgentState conditional_update(const AgentState &agent, int m, double alpha, double beta) {
  if (m == 0) return agent;
  Unitary2 u = partially_random_u(alpha, beta) * agent.u_acc;
  if (u.unitarity_defect() > kUnitarityGuard) u = u.polar_unitary();
  return {u, u.dagger()};
}

double reward_update(double delta, int m, const RewardParams &params) {
  if (!(delta > 0.0)) throw std::invalid_argument("reward_update: delta must be positive");
  return m == 0 ? delta * params.reward_factor() : delta / params.epsilon;
}

Measurement run_iteration(const AgentState &agent, const EnvironmentSpec &env, Rng &rng,
                          const NoiseParams &noise) {
  constexpr int kR = index_of(Qubit::Register);
  constexpr int kE = index_of(Qubit::Environment);

  StateVector psi(3);
  for (const PrepStep &step : env.preparation) {
    psi.apply_1q(step.matrix(), kE);
    apply_gate_noise(psi, kE, noise.gate1(), rng);
  }
  psi.apply_1q(agent.u_acc_dagger, kE);
  apply_gate_noise(psi, kE, noise.gate1(), rng);
  psi.apply_cnot(kE, kR);
  apply_gate_noise(psi, kE, noise.gate2(), rng);
  apply_gate_noise(psi, kR, noise.gate2(), rng);

  Measurement out;
  std::tie(out.p0, out.p1) = psi.prob_z(kR);
  const int raw = psi.measure_z(kR, rng.uniform01());
  out.m = flip_readout(raw, noise.readout(), rng);
  return out;
}

ProtocolRun::ProtocolRun(ProtocolConfig config)
    : config_(std::move(config)),
      reward_(config_.epsilon),
      rng_(config_.seed),
      agent_{Unitary2::identity(), Unitary2::identity()},
      delta_(config_.delta0) {
  config_.validate();
  records_.reserve(static_cast<std::size_t>(config_.iterations));
}

ProtocolRun::Step ProtocolRun::step() {
  if (done()) throw std::logic_error("ProtocolRun::step: run already complete");
  Step s;
  IterationRecord &rec = s.record;
  rec.k = next_k_;

  // Angles are only drawn when the previous outcome asks for an action.
  if (rec.k > 1 && last_m_ == 1) {
    const ActionDraw a = draw_action(rng_, delta_);
    rec.xi_alpha = a.xi_alpha;
    rec.xi_beta = a.xi_beta;
    rec.alpha = a.alpha;
    rec.beta = a.beta;
    agent_ = conditional_update(agent_, last_m_, a.alpha, a.beta);
  }
  s.agent = agent_;

  s.measurement = run_iteration(agent_, config_.environment, rng_, config_.noise);
  rec.m = s.measurement.m;

  const ShotResult shots = estimate_agent_probs(agent_.u_acc, config_.shots, rng_, config_.noise);
  rec.fidelity_shot = classical_fidelity(shots, target_probs(config_.environment));
  rec.fidelity_exact = exact_fidelity(agent_.u_acc, config_.environment);

  delta_ = reward_update(delta_, rec.m, reward_);
  if (config_.delta_max) delta_ = std::min(delta_, *config_.delta_max);
  if (!std::isfinite(delta_)) {
    throw std::overflow_error("exploration range overflowed at iteration " +
                              std::to_string(rec.k));
  }
  rec.delta_after = delta_;

  last_m_ = rec.m;
  ++next_k_;
  records_.push_back(rec);
  return s;
}

Trace ProtocolRun::finish() && {
  while (!done()) step();
  Trace t;
  t.config = std::move(config_);
  t.records = std::move(records_);
  const IterationRecord &last = t.records.back();
  t.final_delta = last.delta_after;
  t.final_fidelity_shot = last.fidelity_shot;
  t.final_fidelity_exact = last.fidelity_exact;
  return t;
}

Trace run_protocol(const ProtocolConfig &config) { return ProtocolRun(config).finish(); }

double value_function(const Trace &trace) {
  if (trace.records.empty()) throw std::invalid_argument("value_function: empty trace");
  return trace.final_delta;
}

}  // namespace qadapt
