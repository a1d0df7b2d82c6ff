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

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "qrelay/rng.hpp"

namespace qrelay {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Entrywise tolerance for structural invariants (Hermiticity, unit trace,
/// trace preservation, unitarity).
inline constexpr double kStructuralTol = 1e-10;

/// Tolerance for algebraic identities on small systems, where double
/// precision leaves plenty of headroom.
inline constexpr double kAlgebraicTol = 1e-12;

/// Dense density matrices are capped here; the relay protocol never needs
/// more than five live qubits (message plus two key pairs).
inline constexpr int kMaxQubits = 8;

/// Name of one qubit, qualified by the node that owns it ("alice.A1").
class QubitLabel {
 public:
  QubitLabel(std::string name);  // NOLINT(google-explicit-constructor)
  QubitLabel(const char* name) : QubitLabel(std::string(name)) {}

  const std::string& name() const { return name_; }

  friend bool operator==(const QubitLabel& a, const QubitLabel& b) {
    return a.name_ == b.name_;
  }
  friend bool operator!=(const QubitLabel& a, const QubitLabel& b) {
    return !(a == b);
  }

 private:
  std::string name_;
};

/// Density matrix over a labeled qubit register.
///
/// The register is ordered; qubit k occupies the k-th most significant bit
/// of the basis index, so a register [a, b] reads left to right in the ket:
/// |a b>. Construction enforces Hermiticity and unit trace entrywise within
/// kStructuralTol; positive semidefiniteness is checked separately by
/// min_eigenvalue() since it needs an eigensolve.
class QuantumState {
 public:
  QuantumState(std::vector<QubitLabel> register_labels, Matrix matrix);

  int num_qubits() const { return static_cast<int>(register_.size()); }
  Eigen::Index dimension() const { return matrix_.rows(); }
  const std::vector<QubitLabel>& register_labels() const { return register_; }
  const Matrix& matrix() const { return matrix_; }

  bool has_qubit(const QubitLabel& label) const;
  /// Position of a label in the register; throws std::invalid_argument and
  /// names the label if absent.
  int qubit_index(const QubitLabel& label) const;

  /// Smallest eigenvalue of the Hermitian-symmetrized matrix. A valid state
  /// satisfies min_eigenvalue() >= -kStructuralTol.
  double min_eigenvalue() const;

 private:
  std::vector<QubitLabel> register_;
  Matrix matrix_;
};

/// k-qubit unitary; construction enforces U U^dagger = I within
/// kStructuralTol entrywise.
class UnitaryOp {
 public:
  UnitaryOp(int arity, Matrix matrix);

  int arity() const { return arity_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  int arity_;
  Matrix matrix_;
};

/// Completely positive trace-preserving map as a Kraus-operator list.
/// Construction enforces sum_i K_i^dagger K_i = I within kStructuralTol.
class KrausChannel {
 public:
  KrausChannel(int arity, std::vector<Matrix> operators);

  int arity() const { return arity_; }
  const std::vector<Matrix>& operators() const { return operators_; }

 private:
  int arity_;
  std::vector<Matrix> operators_;
};

// ---------------------------------------------------------------------------
// Constructors

/// |psi><psi| from a state vector (renormalized; must be within 1e-6 of unit
/// norm). Vector length must be 2^labels.
QuantumState pure_state(std::vector<QubitLabel> labels, const Vector& amplitudes);

/// Computational basis state |bits> over the given labels.
QuantumState basis_state(std::vector<QubitLabel> labels,
                         const std::vector<int>& bits);

/// I / 2^n over the given labels.
QuantumState maximally_mixed(std::vector<QubitLabel> labels);

// ---------------------------------------------------------------------------
// Operations

/// Kronecker product of two states; registers must be label-disjoint and the
/// combined size must stay within kMaxQubits.
QuantumState tensor(const QuantumState& a, const QuantumState& b);

/// rho -> U rho U^dagger with u embedded on the target qubits (in target
/// order). Targets must be distinct register labels and match u's arity.
QuantumState apply_unitary(const QuantumState& state, const UnitaryOp& u,
                           const std::vector<QubitLabel>& targets);

/// rho -> sum_i K_i rho K_i^dagger on the target qubits.
QuantumState apply_channel(const QuantumState& state, const KrausChannel& ch,
                           const std::vector<QubitLabel>& targets);

/// Reduced state on `keep`, in the order given by `keep`.
QuantumState partial_trace(const QuantumState& state,
                           const std::vector<QubitLabel>& keep);

/// <psi| rho |psi> against a pure reference of equal dimension. Rejects mixed
/// references (purity must be 1 within 1e-9).
double fidelity(const QuantumState& state, const QuantumState& reference);

/// Tr rho^2; 1 iff pure, never below 1/2^n.
double purity(const QuantumState& state);

struct MeasurementOutcome {
  int outcome;               // 0 or 1
  QuantumState post_state;   // projected and renormalized, target retained
  double probability;        // Born probability of `outcome`
};

/// Projective Z measurement of one qubit, sampled from the given stream.
/// A zero-probability branch is never returned.
MeasurementOutcome measure_z(const QuantumState& state, const QubitLabel& target,
                             RandomStream& rng);

}  // namespace qrelay
