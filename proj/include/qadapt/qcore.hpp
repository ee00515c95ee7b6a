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

#ifndef QADAPT_QCORE_HPP
#define QADAPT_QCORE_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace qadapt {

using Complex = std::complex<double>;

inline constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

/// 2x2 complex matrix, row-major. Used for every single-qubit operator:
/// gates, the action U(alpha, beta) and the accumulated agent frame.
class Unitary2 {
 public:
  constexpr Unitary2() : m_{Complex{1.0}, Complex{0.0}, Complex{0.0}, Complex{1.0}} {}
  constexpr Unitary2(Complex a00, Complex a01, Complex a10, Complex a11)
      : m_{a00, a01, a10, a11} {}

  static constexpr Unitary2 identity() { return {}; }

  constexpr Complex operator()(int row, int col) const { return m_[2 * row + col]; }
  constexpr Complex &operator()(int row, int col) { return m_[2 * row + col]; }

  Unitary2 dagger() const;
  Complex det() const;

  /// max |(U U^dagger - I)_ij|
  double unitarity_defect() const;

  /// Nearest unitary in the polar-decomposition sense.
  Unitary2 polar_unitary() const;

  /// Largest entrywise modulus of (*this - other).
  double max_abs_diff(const Unitary2 &other) const;

  friend Unitary2 operator*(const Unitary2 &a, const Unitary2 &b);
  friend Unitary2 operator*(Complex s, const Unitary2 &u);

 private:
  std::array<Complex, 4> m_;
};

/// Unitary2 applied to a single-qubit amplitude pair.
std::array<Complex, 2> operator*(const Unitary2 &u, const std::array<Complex, 2> &v);

Unitary2 gate_rx(double angle);
Unitary2 gate_ry(double angle);
Unitary2 gate_rz(double angle);
Unitary2 gate_h();
Unitary2 gate_x();
Unitary2 gate_y();
Unitary2 gate_z();

/// exp(-i S^Z alpha) exp(-i S^X beta) with S = sigma / 2, i.e. RZ(alpha) RX(beta).
Unitary2 partially_random_u(double alpha, double beta);

/// Qubit roles inside the protocol register. Index 0 is the most significant
/// bit of a basis label, so |a r e> has label 4a + 2r + e.
enum class Qubit : int { Agent = 0, Register = 1, Environment = 2 };

constexpr int index_of(Qubit q) { return static_cast<int>(q); }

class StateVector {
 public:
  static constexpr int kMaxQubits = 20;

  /// |0...0> on `num_qubits` qubits. Throws std::invalid_argument outside [1, 20].
  explicit StateVector(int num_qubits);

  /// Takes ownership of explicit amplitudes; the length must be a power of two
  /// and the vector normalized within 1e-10.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const;

  void apply_1q(const Unitary2 &u, int target);
  void apply_1q(const Unitary2 &u, Qubit target) { apply_1q(u, index_of(target)); }

  void apply_cnot(int control, int target);
  void apply_cnot(Qubit control, Qubit target) { apply_cnot(index_of(control), index_of(target)); }

  /// Z-basis marginal (p0, p1) of one qubit.
  std::pair<double, double> prob_z(int target) const;
  std::pair<double, double> prob_z(Qubit target) const { return prob_z(index_of(target)); }

  /// Projective Z measurement driven by an externally supplied uniform
  /// sample: the outcome is 0 iff `rand < p0`. The state is collapsed and
  /// renormalized in place.
  int measure_z(int target, double rand);
  int measure_z(Qubit target, double rand) { return measure_z(index_of(target), rand); }

 private:
  StateVector() = default;
  std::size_t bit_of(int qubit) const;
  void check_target(int qubit) const;

  int num_qubits_ = 0;
  std::vector<Complex> amps_;
};

inline StateVector sv_new(int num_qubits) { return StateVector(num_qubits); }

/// |<a|b>|^2; global phase does not matter.
double overlap_fidelity(const StateVector &a, const StateVector &b);

/// Single-qubit state U|0>.
StateVector single_qubit_from(const Unitary2 &u);

struct BlochAngles {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)
};

/// Bloch angles of a normalized one-qubit state. phi is the phase of
/// amplitude 1 relative to amplitude 0, and is reported as 0 at either pole
/// (sin(theta/2) or cos(theta/2) below 1e-9) where it is undefined.
BlochAngles bloch_angles(const StateVector &state);

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
StateVector from_bloch(const BlochAngles &angles);

}  // namespace qadapt

#endif  // QADAPT_QCORE_HPP
