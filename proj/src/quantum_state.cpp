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

#include "qrelay/quantum_state.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace qrelay {

namespace {

std::invalid_argument arg_error(const std::string& msg) {
  return std::invalid_argument("qrelay: " + msg);
}

// Bit of basis index i belonging to register position p (big-endian).
inline int bit_at(int index, int position, int n) {
  return (index >> (n - 1 - position)) & 1;
}

}  // namespace

QubitLabel::QubitLabel(std::string name) : name_(std::move(name)) {
  if (name_.empty()) {
    throw arg_error("qubit label must be non-empty");
  }
}

QuantumState::QuantumState(std::vector<QubitLabel> register_labels, Matrix matrix)
    : register_(std::move(register_labels)), matrix_(std::move(matrix)) {
  const int n = static_cast<int>(register_.size());
  if (n > kMaxQubits) {
    throw arg_error("register of " + std::to_string(n) + " qubits exceeds the " +
                    std::to_string(kMaxQubits) + "-qubit cap");
  }
  for (std::size_t i = 0; i < register_.size(); ++i) {
    for (std::size_t j = i + 1; j < register_.size(); ++j) {
      if (register_[i] == register_[j]) {
        throw arg_error("duplicate qubit label '" + register_[i].name() + "'");
      }
    }
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw arg_error("matrix is " + std::to_string(matrix_.rows()) + "x" +
                    std::to_string(matrix_.cols()) + " but the register needs " +
                    std::to_string(dim) + "x" + std::to_string(dim));
  }
  const double herm_defect = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > kStructuralTol) {
    throw arg_error("matrix is not Hermitian (defect " +
                    std::to_string(herm_defect) + ")");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kStructuralTol) {
    throw arg_error("matrix trace is not 1");
  }
}

bool QuantumState::has_qubit(const QubitLabel& label) const {
  return std::find(register_.begin(), register_.end(), label) != register_.end();
}

int QuantumState::qubit_index(const QubitLabel& label) const {
  auto it = std::find(register_.begin(), register_.end(), label);
  if (it == register_.end()) {
    throw arg_error("unknown qubit label '" + label.name() + "'");
  }
  return static_cast<int>(it - register_.begin());
}

double QuantumState::min_eigenvalue() const {
  const Matrix sym = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

UnitaryOp::UnitaryOp(int arity, Matrix matrix)
    : arity_(arity), matrix_(std::move(matrix)) {
  if (arity_ < 1) {
    throw arg_error("unitary arity must be at least 1");
  }
  const Eigen::Index dim = Eigen::Index{1} << arity_;
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw arg_error("unitary matrix size does not match arity");
  }
  const Matrix defect =
      matrix_.adjoint() * matrix_ - Matrix::Identity(dim, dim);
  if (defect.cwiseAbs().maxCoeff() > kStructuralTol) {
    throw arg_error("matrix is not unitary");
  }
}

KrausChannel::KrausChannel(int arity, std::vector<Matrix> operators)
    : arity_(arity), operators_(std::move(operators)) {
  if (arity_ < 1) {
    throw arg_error("channel arity must be at least 1");
  }
  if (operators_.empty()) {
    throw arg_error("channel needs at least one Kraus operator");
  }
  const Eigen::Index dim = Eigen::Index{1} << arity_;
  Matrix completeness = Matrix::Zero(dim, dim);
  for (const Matrix& k : operators_) {
    if (k.rows() != dim || k.cols() != dim) {
      throw arg_error("Kraus operator size does not match channel arity");
    }
    completeness += k.adjoint() * k;
  }
  const double defect =
      (completeness - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (defect > kStructuralTol) {
    throw arg_error("channel is not trace-preserving (defect " +
                    std::to_string(defect) + ")");
  }
}

QuantumState pure_state(std::vector<QubitLabel> labels, const Vector& amplitudes) {
  const Eigen::Index dim = Eigen::Index{1} << labels.size();
  if (amplitudes.size() != dim) {
    throw arg_error("amplitude vector length does not match register size");
  }
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-6) {
    throw arg_error("amplitude vector is not normalized");
  }
  const Vector psi = amplitudes / norm;
  return QuantumState(std::move(labels), psi * psi.adjoint());
}

QuantumState basis_state(std::vector<QubitLabel> labels,
                         const std::vector<int>& bits) {
  if (bits.size() != labels.size()) {
    throw arg_error("bit count does not match register size");
  }
  const int n = static_cast<int>(labels.size());
  int index = 0;
  for (int k = 0; k < n; ++k) {
    if (bits[k] != 0 && bits[k] != 1) {
      throw arg_error("basis bits must be 0 or 1");
    }
    index |= bits[k] << (n - 1 - k);
  }
  Vector psi = Vector::Zero(Eigen::Index{1} << n);
  psi(index) = 1.0;
  return pure_state(std::move(labels), psi);
}

QuantumState maximally_mixed(std::vector<QubitLabel> labels) {
  const Eigen::Index dim = Eigen::Index{1} << labels.size();
  return QuantumState(std::move(labels),
                      Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

QuantumState tensor(const QuantumState& a, const QuantumState& b) {
  for (const QubitLabel& label : b.register_labels()) {
    if (a.has_qubit(label)) {
      throw arg_error("tensor registers overlap on label '" + label.name() + "'");
    }
  }
  std::vector<QubitLabel> combined = a.register_labels();
  combined.insert(combined.end(), b.register_labels().begin(),
                  b.register_labels().end());
  Matrix product = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return QuantumState(std::move(combined), std::move(product));
}

namespace {

std::vector<int> target_positions(const QuantumState& state,
                                  const std::vector<QubitLabel>& targets) {
  std::vector<int> positions;
  positions.reserve(targets.size());
  for (const QubitLabel& t : targets) {
    positions.push_back(state.qubit_index(t));
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if (positions[i] == positions[j]) {
        throw arg_error("duplicate target '" + targets[i].name() + "'");
      }
    }
  }
  return positions;
}

// Expands a 2^k x 2^k operator acting on the given register positions (in
// operator qubit order) to the full 2^n x 2^n matrix.
Matrix embed_operator(const Matrix& op, int n, const std::vector<int>& positions) {
  const int k = static_cast<int>(positions.size());
  const int dim = 1 << n;
  const int sub_dim = 1 << k;
  int target_mask = 0;
  for (int p : positions) {
    target_mask |= 1 << (n - 1 - p);
  }
  Matrix full = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    int sub_i = 0;
    for (int m = 0; m < k; ++m) {
      sub_i |= bit_at(i, positions[m], n) << (k - 1 - m);
    }
    const int rest = i & ~target_mask;
    for (int sub_j = 0; sub_j < sub_dim; ++sub_j) {
      const Complex value = op(sub_i, sub_j);
      if (value == Complex(0.0, 0.0)) {
        continue;
      }
      int j = rest;
      for (int m = 0; m < k; ++m) {
        j |= ((sub_j >> (k - 1 - m)) & 1) << (n - 1 - positions[m]);
      }
      full(i, j) = value;
    }
  }
  return full;
}

}  // namespace

QuantumState apply_unitary(const QuantumState& state, const UnitaryOp& u,
                           const std::vector<QubitLabel>& targets) {
  if (static_cast<int>(targets.size()) != u.arity()) {
    throw arg_error("unitary arity " + std::to_string(u.arity()) +
                    " does not match " + std::to_string(targets.size()) +
                    " targets");
  }
  const std::vector<int> positions = target_positions(state, targets);
  const Matrix full = embed_operator(u.matrix(), state.num_qubits(), positions);
  Matrix result = full * state.matrix() * full.adjoint();
  // quash roundoff drift so repeated application stays within tolerance
  result = 0.5 * (result + result.adjoint().eval());
  return QuantumState(state.register_labels(), std::move(result));
}

QuantumState apply_channel(const QuantumState& state, const KrausChannel& ch,
                           const std::vector<QubitLabel>& targets) {
  if (static_cast<int>(targets.size()) != ch.arity()) {
    throw arg_error("channel arity " + std::to_string(ch.arity()) +
                    " does not match " + std::to_string(targets.size()) +
                    " targets");
  }
  const std::vector<int> positions = target_positions(state, targets);
  const Eigen::Index dim = state.dimension();
  Matrix result = Matrix::Zero(dim, dim);
  for (const Matrix& k : ch.operators()) {
    const Matrix full = embed_operator(k, state.num_qubits(), positions);
    result += full * state.matrix() * full.adjoint();
  }
  result = 0.5 * (result + result.adjoint().eval());
  return QuantumState(state.register_labels(), std::move(result));
}

QuantumState partial_trace(const QuantumState& state,
                           const std::vector<QubitLabel>& keep) {
  if (keep.empty()) {
    throw arg_error("partial_trace needs a non-empty keep set");
  }
  const std::vector<int> kept = target_positions(state, keep);
  const int n = state.num_qubits();
  const int k = static_cast<int>(kept.size());

  std::vector<int> traced;
  for (int p = 0; p < n; ++p) {
    if (std::find(kept.begin(), kept.end(), p) == kept.end()) {
      traced.push_back(p);
    }
  }

  const int out_dim = 1 << k;
  const int traced_dim = 1 << (n - k);
  const Matrix& rho = state.matrix();
  Matrix reduced = Matrix::Zero(out_dim, out_dim);
  for (int a = 0; a < out_dim; ++a) {
    for (int b = 0; b < out_dim; ++b) {
      Complex acc(0.0, 0.0);
      for (int t = 0; t < traced_dim; ++t) {
        int row = 0;
        int col = 0;
        for (int m = 0; m < k; ++m) {
          const int shift = n - 1 - kept[m];
          row |= ((a >> (k - 1 - m)) & 1) << shift;
          col |= ((b >> (k - 1 - m)) & 1) << shift;
        }
        for (std::size_t m = 0; m < traced.size(); ++m) {
          const int bit = (t >> (traced.size() - 1 - m)) & 1;
          const int shift = n - 1 - traced[m];
          row |= bit << shift;
          col |= bit << shift;
        }
        acc += rho(row, col);
      }
      reduced(a, b) = acc;
    }
  }
  return QuantumState(keep, std::move(reduced));
}

double fidelity(const QuantumState& state, const QuantumState& reference) {
  if (state.dimension() != reference.dimension()) {
    throw arg_error("fidelity requires states of equal dimension");
  }
  if (std::abs(purity(reference) - 1.0) > 1e-9) {
    throw arg_error("fidelity reference must be pure");
  }
  // Pure reference: its vector is the eigenvector of the unit eigenvalue.
  Eigen::SelfAdjointEigenSolver<Matrix> solver(reference.matrix());
  Eigen::Index which = 0;
  solver.eigenvalues().maxCoeff(&which);
  const Vector psi = solver.eigenvectors().col(which);
  const double value = std::real(psi.dot(state.matrix() * psi));
  return std::clamp(value, 0.0, 1.0);
}

double purity(const QuantumState& state) {
  // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
  return state.matrix().squaredNorm();
}

MeasurementOutcome measure_z(const QuantumState& state, const QubitLabel& target,
                             RandomStream& rng) {
  const int position = state.qubit_index(target);
  const int n = state.num_qubits();
  const Eigen::Index dim = state.dimension();

  double p0 = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (bit_at(static_cast<int>(i), position, n) == 0) {
      p0 += std::real(state.matrix()(i, i));
    }
  }
  p0 = std::clamp(p0, 0.0, 1.0);

  int outcome = rng.uniform() < p0 ? 0 : 1;
  double probability = outcome == 0 ? p0 : 1.0 - p0;
  if (probability < 1e-12) {
    outcome ^= 1;
    probability = 1.0 - probability;
  }

  Matrix projected = state.matrix();
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (bit_at(static_cast<int>(i), position, n) != outcome ||
          bit_at(static_cast<int>(j), position, n) != outcome) {
        projected(i, j) = Complex(0.0, 0.0);
      }
    }
  }
  projected /= probability;
  return MeasurementOutcome{outcome,
                            QuantumState(state.register_labels(), std::move(projected)),
                            probability};
}

}  // namespace qrelay
