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

#include "qrelay/gates.hpp"

#include <cmath>

namespace qrelay::gates {

UnitaryOp identity(int arity) {
  const Eigen::Index dim = Eigen::Index{1} << arity;
  return UnitaryOp(arity, Matrix::Identity(dim, dim));
}

UnitaryOp pauli_x() {
  Matrix m(2, 2);
  m << 0, 1,  //
      1, 0;
  return UnitaryOp(1, m);
}

UnitaryOp pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1),  //
      Complex(0, 1), Complex(0, 0);
  return UnitaryOp(1, m);
}

UnitaryOp pauli_z() {
  Matrix m(2, 2);
  m << 1, 0,  //
      0, -1;
  return UnitaryOp(1, m);
}

UnitaryOp hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  m << s, s,  //
      s, -s;
  return UnitaryOp(1, m);
}

UnitaryOp cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return UnitaryOp(2, m);
}

UnitaryOp cz() {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = -1;
  return UnitaryOp(2, m);
}

}  // namespace qrelay::gates
