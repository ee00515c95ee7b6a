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

#ifndef QADAPT_NOISE_HPP
#define QADAPT_NOISE_HPP

#include <string>
#include <string_view>

#include "qadapt/qcore.hpp"
#include "qadapt/rng.hpp"

namespace qadapt {

/// Stochastic-trajectory noise: a uniformly chosen Pauli after gates with
/// the given probabilities, and classical bit flips on readout.
struct NoiseParams {
  double p_gate1 = 0.0;    // after each single-qubit gate
  double p_gate2 = 0.0;    // after each CNOT, independently on each qubit it touches
  double p_readout = 0.0;  // measured bit flipped
  bool enabled = false;

  static NoiseParams ideal() { return {}; }

  /// Modeling choice emulating an uncharacterized superconducting device.
  static NoiseParams device_default() { return {0.002, 0.02, 0.03, true}; }

  double gate1() const { return enabled ? p_gate1 : 0.0; }
  double gate2() const { return enabled ? p_gate2 : 0.0; }
  double readout() const { return enabled ? p_readout : 0.0; }

  /// Throws std::invalid_argument unless every probability is in [0, 0.5].
  void validate() const;

  bool operator==(const NoiseParams &) const = default;
};

/// Parses "ideal", "device-default" or an explicit "p1,p2,pr" triple.
NoiseParams parse_noise(std::string_view text);

/// Inverse of parse_noise: a preset name when the parameters match one,
/// otherwise the explicit triple in shortest round-trip form.
std::string format_noise(const NoiseParams &noise);

enum class Pauli { I, X, Y, Z };

const Unitary2 &pauli_matrix(Pauli p);

/// With probability p applies X, Y or Z (uniformly) to `target`. No random
/// numbers are consumed when p == 0. Returns the branch taken.
Pauli apply_gate_noise(StateVector &state, int target, double p, Rng &rng);

/// Returns 1 - bit with probability p. No random numbers are consumed when p == 0.
int flip_readout(int bit, double p, Rng &rng);

/// Draws a Pauli branch without touching any state; same stream usage as
/// apply_gate_noise.
Pauli draw_pauli(double p, Rng &rng);

}  // namespace qadapt

#endif  // QADAPT_NOISE_HPP
