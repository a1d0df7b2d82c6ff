// Copyright 2026 The qrelay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "qrelay/quantum_state.hpp"

namespace qrelay {

enum class BellKind { phi_plus, phi_minus, psi_plus, psi_minus };

/// Pure two-qubit Bell state:
///   phi_plus  (|00> + |11>)/sqrt(2)     psi_plus  (|01> + |10>)/sqrt(2)
///   phi_minus (|00> - |11>)/sqrt(2)     psi_minus (|01> - |10>)/sqrt(2)
QuantumState bell_state(BellKind kind, const QubitLabel& a, const QubitLabel& b);

/// n-qubit (|0...0> + |1...1>)/sqrt(2), n >= 3.
QuantumState ghz_state(std::vector<QubitLabel> labels);

/// Equal superposition of all single-excitation basis states, n >= 3.
QuantumState w_state(std::vector<QubitLabel> labels);

/// Measurement settings for the CHSH statistic; each angle selects the
/// rotated observable cos(theta) Z + sin(theta) X.
struct ChshAngles {
  double a;
  double a_prime;
  double b;
  double b_prime;
};

/// Settings that maximize S for phi_plus (and for any Werner mixture of it).
ChshAngles chsh_optimal_angles();

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b'), with each correlator computed
/// exactly from expectation values. |S| never exceeds 2*sqrt(2) (plus
/// roundoff) on a valid two-qubit state.
double chsh_value(const QuantumState& state, const ChshAngles& angles);

}  // namespace qrelay
