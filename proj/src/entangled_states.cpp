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

#include "qrelay/entangled_states.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>

namespace qrelay {

QuantumState bell_state(BellKind kind, const QubitLabel& a, const QubitLabel& b) {
  if (a == b) {
    throw std::invalid_argument("qrelay: bell_state needs two distinct labels");
  }
  const double s = 1.0 / std::sqrt(2.0);
  Vector psi = Vector::Zero(4);
  switch (kind) {
    case BellKind::phi_plus:
      psi(0) = s;
      psi(3) = s;
      break;
    case BellKind::phi_minus:
      psi(0) = s;
      psi(3) = -s;
      break;
    case BellKind::psi_plus:
      psi(1) = s;
      psi(2) = s;
      break;
    case BellKind::psi_minus:
      psi(1) = s;
      psi(2) = -s;
      break;
  }
  return pure_state({a, b}, psi);
}

QuantumState ghz_state(std::vector<QubitLabel> labels) {
  const int n = static_cast<int>(labels.size());
  if (n < 3) {
    throw std::invalid_argument("qrelay: ghz_state needs at least 3 qubits");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  Vector psi = Vector::Zero(dim);
  const double s = 1.0 / std::sqrt(2.0);
  psi(0) = s;
  psi(dim - 1) = s;
  return pure_state(std::move(labels), psi);
}

QuantumState w_state(std::vector<QubitLabel> labels) {
  const int n = static_cast<int>(labels.size());
  if (n < 3) {
    throw std::invalid_argument("qrelay: w_state needs at least 3 qubits");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  Vector psi = Vector::Zero(dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    psi(Eigen::Index{1} << (n - 1 - k)) = amp;
  }
  return pure_state(std::move(labels), psi);
}

ChshAngles chsh_optimal_angles() { return ChshAngles{0.0, M_PI / 2, M_PI / 4, 3 * M_PI / 4}; }

namespace {

Matrix rotated_observable(double theta) {
  Matrix m(2, 2);
  m << std::cos(theta), std::sin(theta),  //
      std::sin(theta), -std::cos(theta);
  return m;
}

double correlator(const Matrix& rho, double theta_a, double theta_b) {
  const Matrix joint =
      Eigen::kroneckerProduct(rotated_observable(theta_a), rotated_observable(theta_b));
  return std::real((rho * joint).trace());
}

}  // namespace

double chsh_value(const QuantumState& state, const ChshAngles& angles) {
  if (state.num_qubits() != 2) {
    throw std::invalid_argument("qrelay: chsh_value needs a two-qubit state");
  }
  const Matrix& rho = state.matrix();
  const double s = correlator(rho, angles.a, angles.b) -
                   correlator(rho, angles.a, angles.b_prime) +
                   correlator(rho, angles.a_prime, angles.b) +
                   correlator(rho, angles.a_prime, angles.b_prime);
  if (std::abs(s) > 2.0 * std::sqrt(2.0) + 1e-9) {
    throw std::logic_error("qrelay: CHSH value exceeds the Tsirelson bound");
  }
  return s;
}

}  // namespace qrelay
