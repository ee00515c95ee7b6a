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

#ifndef QADAPT_ESTIMATOR_HPP
#define QADAPT_ESTIMATOR_HPP

#include <cstdint>

#include "qadapt/environment.hpp"
#include "qadapt/noise.hpp"
#include "qadapt/qcore.hpp"
#include "qadapt/rng.hpp"

namespace qadapt {

struct ShotResult {
  std::int64_t shots = 0;
  std::int64_t ones = 0;
  double p0_hat = 1.0;
  double p1_hat = 0.0;

  static ShotResult from_counts(std::int64_t shots, std::int64_t ones);
};

struct TargetProbs {
  double p0_t = 1.0;
  double p1_t = 0.0;
};

/// Prepares U|0> on a fresh qubit `shots` times and measures it in Z. Under
/// noise each shot sees one gate-noise event (p_gate1) after U and a readout
/// flip. Throws std::invalid_argument for shots < 1.
ShotResult estimate_agent_probs(const Unitary2 &u_acc, std::int64_t shots, Rng &rng,
                                const NoiseParams &noise);

/// Z-basis probabilities of the ideal environment state.
TargetProbs target_probs(const EnvironmentSpec &env);

/// Bhattacharyya coefficient sqrt(p0 q0) + sqrt(p1 q1), clamped to [0, 1].
double classical_fidelity(double p0, double p1, double q0, double q1);
double classical_fidelity(const ShotResult &p, const TargetProbs &t);

/// |<eps| U |0>|^2
double exact_fidelity(const Unitary2 &u_acc, const EnvironmentSpec &env);

}  // namespace qadapt

#endif  // QADAPT_ESTIMATOR_HPP
