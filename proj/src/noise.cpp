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

#include "qadapt/noise.hpp"

#include <array>
#include <charconv>
#include <stdexcept>
#include <string>
#include <vector>

#include "qadapt/format.hpp"

namespace qadapt {
namespace {

void check_probability(double p, const char *what) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::invalid_argument(std::string(what) + " must be in [0, 0.5], got " +
                                format_double(p));
  }
}

}  // namespace

void NoiseParams::validate() const {
  check_probability(p_gate1, "p_gate1");
  check_probability(p_gate2, "p_gate2");
  check_probability(p_readout, "p_readout");
}

NoiseParams parse_noise(std::string_view text) {
  if (text == "ideal") return NoiseParams::ideal();
  if (text == "device-default") return NoiseParams::device_default();

  std::array<double, 3> values{};
  std::size_t count = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    if (count == values.size()) {
      throw std::invalid_argument("noise: expected exactly three comma-separated values");
    }
    values[count++] = parse_double(text.substr(start, comma - start));
    start = comma + 1;
  }
  if (count != values.size()) {
    throw std::invalid_argument("noise: expected 'ideal', 'device-default' or 'p1,p2,pr'");
  }
  NoiseParams noise{values[0], values[1], values[2], true};
  noise.validate();
  return noise;
}

std::string format_noise(const NoiseParams &noise) {
  if (!noise.enabled || noise == NoiseParams::ideal()) return "ideal";
  if (noise == NoiseParams::device_default()) return "device-default";
  return format_double(noise.p_gate1) + "," + format_double(noise.p_gate2) + "," +
         format_double(noise.p_readout);
}

const Unitary2 &pauli_matrix(Pauli p) {
  static const std::array<Unitary2, 4> table{Unitary2::identity(), gate_x(), gate_y(), gate_z()};
  return table[static_cast<int>(p)];
}

Pauli draw_pauli(double p, Rng &rng) {
  check_probability(p, "gate noise probability");
  if (p == 0.0 || !rng.bernoulli(p)) return Pauli::I;
  return static_cast<Pauli>(1 + rng.below(3));
}

Pauli apply_gate_noise(StateVector &state, int target, double p, Rng &rng) {
  const Pauli branch = draw_pauli(p, rng);
  if (branch != Pauli::I) state.apply_1q(pauli_matrix(branch), target);
  return branch;
}

int flip_readout(int bit, double p, Rng &rng) {
  check_probability(p, "readout flip probability");
  if (p == 0.0) return bit;
  return rng.bernoulli(p) ? 1 - bit : bit;
}

}  // namespace qadapt
