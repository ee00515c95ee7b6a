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

#ifndef QADAPT_ENVIRONMENT_HPP
#define QADAPT_ENVIRONMENT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "qadapt/qcore.hpp"

namespace qadapt {

enum class GateKind { RX, RY, RZ, H, X, Y, Z };

std::string_view gate_name(GateKind kind);
/// Case-insensitive inverse of gate_name.
GateKind parse_gate_kind(std::string_view name);

struct PrepStep {
  GateKind gate = GateKind::RY;
  double angle = 0.0;  // ignored for fixed gates

  Unitary2 matrix() const;
  bool operator==(const PrepStep &) const = default;
};

/// Preparation of the unknown reference state: `preparation` is applied to
/// |0> in list order, so RZ(a) RY(b)|0> is written {RY b, RZ a}.
struct EnvironmentSpec {
  std::string label;
  std::vector<PrepStep> preparation;

  /// Ordered product of the preparation gates (U^E).
  Unitary2 unitary() const;
  /// U^E |0>
  StateVector state() const;
  /// Throws std::invalid_argument on an empty label or non-finite angle.
  void validate() const;

  bool operator==(const EnvironmentSpec &) const = default;
};

}  // namespace qadapt

#endif  // QADAPT_ENVIRONMENT_HPP
