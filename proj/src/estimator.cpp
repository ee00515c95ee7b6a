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

#include "qadapt/estimator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace qadapt {

ShotResult ShotResult::from_counts(std::int64_t shots, std::int64_t ones) {
  if (shots < 1 || ones < 0 || ones > shots) {
    throw std::invalid_argument("ShotResult: inconsistent counts");
  }
  ShotResult r;
  r.shots = shots;
  r.ones = ones;
  r.p0_hat = static_cast<double>(shots - ones) / static_cast<double>(shots);
  r.p1_hat = 1.0 - r.p0_hat;
  return r;
}

ShotResult estimate_agent_probs(const Unitary2 &u_acc, std::int64_t shots, Rng &rng,
                                const NoiseParams &noise) {
  if (shots < 1) throw std::invalid_argument("estimate_agent_probs: shots must be >= 1");

  // Every shot starts from the same U|0>, so the post-noise state can only
  // be one of four; their zero-outcome probabilities are computed once.
  const StateVector agent = single_qubit_from(u_acc);
  std::array<double, 4> p0_by_branch{};
  for (int b = 0; b < 4; ++b) {
    StateVector s = agent;
    if (b != 0) s.apply_1q(pauli_matrix(static_cast<Pauli>(b)), 0);
    p0_by_branch[b] = s.prob_z(0).first;
  }

  const double p_gate = noise.gate1();
  const double p_read = noise.readout();
  std::int64_t ones = 0;
  if (p_gate == 0.0 && p_read == 0.0) {
    const double p0 = p0_by_branch[0];
    for (std::int64_t i = 0; i < shots; ++i) ones += rng.uniform01() < p0 ? 0 : 1;
  } else {
    for (std::int64_t i = 0; i < shots; ++i) {
      const Pauli branch = draw_pauli(p_gate, rng);
      const int bit = rng.uniform01() < p0_by_branch[static_cast<int>(branch)] ? 0 : 1;
      ones += flip_readout(bit, p_read, rng);
    }
  }
  return ShotResult::from_counts(shots, ones);
}

TargetProbs target_probs(const EnvironmentSpec &env) {
  const auto [p0, p1] = env.state().prob_z(0);
  return {p0, p1};
}

double classical_fidelity(double p0, double p1, double q0, double q1) {
  if (p0 == q0 && p1 == q1) return 1.0;
  const double f = std::sqrt(p0 * q0) + std::sqrt(p1 * q1);
  return std::clamp(f, 0.0, 1.0);
}

double classical_fidelity(const ShotResult &p, const TargetProbs &t) {
  return classical_fidelity(p.p0_hat, p.p1_hat, t.p0_t, t.p1_t);
}

double exact_fidelity(const Unitary2 &u_acc, const EnvironmentSpec &env) {
  return std::clamp(overlap_fidelity(env.state(), single_qubit_from(u_acc)), 0.0, 1.0);
}

}  // namespace qadapt
