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

#include "qadapt/environment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qadapt {

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
  }
  throw std::logic_error("gate_name: bad GateKind");
}

GateKind parse_gate_kind(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (GateKind k : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::H, GateKind::X,
                     GateKind::Y, GateKind::Z}) {
    if (upper == gate_name(k)) return k;
  }
  throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

Unitary2 PrepStep::matrix() const {
  switch (gate) {
    case GateKind::RX: return gate_rx(angle);
    case GateKind::RY: return gate_ry(angle);
    case GateKind::RZ: return gate_rz(angle);
    case GateKind::H: return gate_h();
    case GateKind::X: return gate_x();
    case GateKind::Y: return gate_y();
    case GateKind::Z: return gate_z();
  }
  throw std::logic_error("PrepStep::matrix: bad GateKind");
}

Unitary2 EnvironmentSpec::unitary() const {
  Unitary2 u;
  for (const PrepStep &step : preparation) u = step.matrix() * u;
  return u;
}

StateVector EnvironmentSpec::state() const {
  StateVector s(1);
  for (const PrepStep &step : preparation) s.apply_1q(step.matrix(), 0);
  return s;
}

void EnvironmentSpec::validate() const {
  if (label.empty()) throw std::invalid_argument("environment: empty label");
  for (const PrepStep &step : preparation) {
    if (!std::isfinite(step.angle)) {
      throw std::invalid_argument("environment '" + label + "': non-finite angle");
    }
  }
}

}  // namespace qadapt
