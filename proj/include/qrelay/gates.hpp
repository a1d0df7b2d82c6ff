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

namespace qrelay::gates {

UnitaryOp identity(int arity = 1);
UnitaryOp pauli_x();
UnitaryOp pauli_y();
UnitaryOp pauli_z();
UnitaryOp hadamard();

/// Two-qubit controlled-X; the first target is the control.
UnitaryOp cnot();

/// Two-qubit controlled-Z (symmetric between its qubits).
UnitaryOp cz();

}  // namespace qrelay::gates
