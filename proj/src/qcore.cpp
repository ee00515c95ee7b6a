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

#include "qadapt/qcore.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qadapt {
namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPoleTolerance = 1e-9;

void require_finite(double angle, const char *what) {
  if (!std::isfinite(angle)) {
    throw std::invalid_argument(std::string(what) + ": angle must be finite");
  }
}

}  // namespace

Unitary2 Unitary2::dagger() const {
  return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

Complex Unitary2::det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

double Unitary2::unitarity_defect() const {
  const Unitary2 p = *this * dagger();
  return p.max_abs_diff(identity());
}

Unitary2 Unitary2::polar_unitary() const {
  // Newton iteration X <- (X + X^{-dagger}) / 2, quadratically convergent
  // from a near-unitary start.
  Unitary2 x = *this;
  for (int iter = 0; iter < 16; ++iter) {
    const Complex d = x.det();
    if (std::abs(d) == 0.0) {
      throw std::domain_error("polar_unitary: singular matrix");
    }
    const Unitary2 inv{x(1, 1) / d, -x(0, 1) / d, -x(1, 0) / d, x(0, 0) / d};
    const Unitary2 inv_dag = inv.dagger();
    Unitary2 next;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) next(r, c) = 0.5 * (x(r, c) + inv_dag(r, c));
    }
    const double step = next.max_abs_diff(x);
    x = next;
    if (step < 1e-16) break;
  }
  return x;
}

double Unitary2::max_abs_diff(const Unitary2 &other) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(m_[i] - other.m_[i]));
  return worst;
}

Unitary2 operator*(const Unitary2 &a, const Unitary2 &b) {
  return {a.m_[0] * b.m_[0] + a.m_[1] * b.m_[2], a.m_[0] * b.m_[1] + a.m_[1] * b.m_[3],
          a.m_[2] * b.m_[0] + a.m_[3] * b.m_[2], a.m_[2] * b.m_[1] + a.m_[3] * b.m_[3]};
}

Unitary2 operator*(Complex s, const Unitary2 &u) {
  return {s * u.m_[0], s * u.m_[1], s * u.m_[2], s * u.m_[3]};
}

std::array<Complex, 2> operator*(const Unitary2 &u, const std::array<Complex, 2> &v) {
  return {u(0, 0) * v[0] + u(0, 1) * v[1], u(1, 0) * v[0] + u(1, 1) * v[1]};
}

Unitary2 gate_rx(double angle) {
  require_finite(angle, "gate_rx");
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  return {c, -kI * s, -kI * s, c};
}

Unitary2 gate_ry(double angle) {
  require_finite(angle, "gate_ry");
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  return {c, -s, s, c};
}

Unitary2 gate_rz(double angle) {
  require_finite(angle, "gate_rz");
  return {std::polar(1.0, -angle / 2.0), 0.0, 0.0, std::polar(1.0, angle / 2.0)};
}

Unitary2 gate_h() {
  constexpr double r = kInvSqrt2;
  return {r, r, r, -r};
}

Unitary2 gate_x() { return {0.0, 1.0, 1.0, 0.0}; }
Unitary2 gate_y() { return {0.0, -kI, kI, 0.0}; }
Unitary2 gate_z() { return {1.0, 0.0, 0.0, -1.0}; }

Unitary2 partially_random_u(double alpha, double beta) {
  return gate_rz(alpha) * gate_rx(beta);
}

StateVector::StateVector(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("StateVector: num_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(num_qubits));
  }
  num_qubits_ = num_qubits;
  amps_.assign(std::size_t{1} << num_qubits, Complex{0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t n = amplitudes.size();
  if (n < 2 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("StateVector: amplitude count must be a power of two >= 2");
  }
  const int qubits = std::countr_zero(n);
  if (qubits > kMaxQubits) throw std::invalid_argument("StateVector: too many qubits");
  StateVector s;
  s.num_qubits_ = qubits;
  s.amps_ = std::move(amplitudes);
  if (std::abs(s.norm_squared() - 1.0) > 1e-10) {
    throw std::invalid_argument("StateVector: amplitudes are not normalized");
  }
  return s;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const Complex &a : amps_) total += std::norm(a);
  return total;
}

void StateVector::check_target(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range for " +
                            std::to_string(num_qubits_) + "-qubit register");
  }
}

std::size_t StateVector::bit_of(int qubit) const {
  return std::size_t{1} << (num_qubits_ - 1 - qubit);
}

void StateVector::apply_1q(const Unitary2 &u, int target) {
  check_target(target);
  const std::size_t bit = bit_of(target);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const Complex a0 = amps_[i];
    const Complex a1 = amps_[i | bit];
    amps_[i] = u(0, 0) * a0 + u(0, 1) * a1;
    amps_[i | bit] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

void StateVector::apply_cnot(int control, int target) {
  check_target(control);
  check_target(target);
  if (control == target) throw std::invalid_argument("apply_cnot: control equals target");
  const std::size_t cbit = bit_of(control);
  const std::size_t tbit = bit_of(target);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
  }
}

std::pair<double, double> StateVector::prob_z(int target) const {
  check_target(target);
  const std::size_t bit = bit_of(target);
  double p0 = 0.0;
  double p1 = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    (i & bit ? p1 : p0) += std::norm(amps_[i]);
  }
  const double total = p0 + p1;
  return {p0 / total, p1 / total};
}

int StateVector::measure_z(int target, double rand) {
  const auto [p0, p1] = prob_z(target);
  const int outcome = rand < p0 ? 0 : 1;
  const std::size_t bit = bit_of(target);
  const double scale = 1.0 / std::sqrt(outcome == 0 ? p0 : p1);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const bool is_one = (i & bit) != 0;
    if (is_one == (outcome == 1)) {
      amps_[i] *= scale;
    } else {
      amps_[i] = 0.0;
    }
  }
  return outcome;
}

double overlap_fidelity(const StateVector &a, const StateVector &b) {
  if (a.size() != b.size()) throw std::invalid_argument("overlap_fidelity: size mismatch");
  Complex inner{0.0};
  for (std::size_t i = 0; i < a.size(); ++i) inner += std::conj(a[i]) * b[i];
  return std::norm(inner);
}

StateVector single_qubit_from(const Unitary2 &u) {
  StateVector s(1);
  s.apply_1q(u, 0);
  return s;
}

BlochAngles bloch_angles(const StateVector &state) {
  if (state.num_qubits() != 1) {
    throw std::invalid_argument("bloch_angles: expected a single-qubit state");
  }
  const double r0 = std::abs(state[0]);
  const double r1 = std::abs(state[1]);
  BlochAngles out;
  out.theta = 2.0 * std::atan2(r1, r0);
  const double norm = std::hypot(r0, r1);
  if (r1 / norm < kPoleTolerance || r0 / norm < kPoleTolerance) return out;
  double phi = std::arg(state[1]) - std::arg(state[0]);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (phi >= two_pi) phi = 0.0;
  out.phi = phi;
  return out;
}

StateVector from_bloch(const BlochAngles &angles) {
  return StateVector::from_amplitudes(
      {Complex{std::cos(angles.theta / 2.0)},
       std::polar(std::sin(angles.theta / 2.0), angles.phi)});
}

}  // namespace qadapt
