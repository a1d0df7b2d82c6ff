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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracle.hpp"
#include "qrelay/entangled_states.hpp"
#include "qrelay/gates.hpp"
#include "qrelay/noise.hpp"
#include "qrelay/quantum_state.hpp"
#include "qrelay/rng.hpp"

using namespace qrelay;

namespace {

QuantumState random_state(const std::vector<QubitLabel>& labels,
                          RandomStream& rng) {
  return QuantumState(labels,
                      oracle::random_density(static_cast<int>(labels.size()), rng));
}

void check_valid_state(const QuantumState& s) {
  CHECK(std::abs(s.matrix().trace().real() - 1.0) <= kStructuralTol);
  CHECK((s.matrix() - s.matrix().adjoint()).cwiseAbs().maxCoeff() <=
        kStructuralTol);
  CHECK(s.min_eigenvalue() >= -kStructuralTol);
}

}  // namespace

TEST_CASE("tensor: basis product and trivial factor") {
  const QuantumState zero = basis_state({"a.q"}, {0});
  const QuantumState one = basis_state({"b.q"}, {1});
  const QuantumState product = tensor(zero, one);
  // |01><01| has its single unit entry at index 1
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  CHECK(oracle::max_abs_diff(product.matrix(), expected) <= kAlgebraicTol);

  // 0-qubit state is the neutral element
  const QuantumState trivial(std::vector<QubitLabel>{}, Matrix::Identity(1, 1));
  RandomStream rng(7);
  const QuantumState rho = random_state({"a.q"}, rng);
  CHECK(oracle::max_abs_diff(tensor(rho, trivial).matrix(), rho.matrix()) == 0.0);
}

TEST_CASE("tensor: rejects duplicate labels, naming the offender") {
  const QuantumState a = basis_state({"alice.A1"}, {0});
  const QuantumState b = basis_state({"alice.A1"}, {1});
  CHECK_THROWS_WITH_AS(tensor(a, b), doctest::Contains("alice.A1"),
                       std::invalid_argument);
}

TEST_CASE("tensor: purity is multiplicative") {
  RandomStream rng(11);
  for (int rep = 0; rep < 25; ++rep) {
    const QuantumState rho = random_state({"x.q"}, rng);
    const QuantumState sigma = random_state({"y.q"}, rng);
    const double direct =
        oracle::purity(oracle::kron(rho.matrix(), sigma.matrix()));
    CHECK(purity(tensor(rho, sigma)) ==
          doctest::Approx(purity(rho) * purity(sigma)).epsilon(1e-12));
    CHECK(purity(tensor(rho, sigma)) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("tensor: 8-qubit cap enforced") {
  std::vector<QubitLabel> labels;
  std::vector<int> bits;
  for (int i = 0; i < 8; ++i) {
    labels.emplace_back("n.q" + std::to_string(i));
    bits.push_back(0);
  }
  const QuantumState big = basis_state(labels, bits);
  const QuantumState extra = basis_state({"n.q8"}, {0});
  CHECK_THROWS_AS(tensor(big, extra), std::invalid_argument);
}

TEST_CASE("apply_unitary: X flips a basis state, identity is a no-op") {
  const QuantumState zero = basis_state({"a.q"}, {0});
  const QuantumState flipped = apply_unitary(zero, gates::pauli_x(), {"a.q"});
  CHECK(oracle::max_abs_diff(flipped.matrix(),
                             basis_state({"a.q"}, {1}).matrix()) <=
        kAlgebraicTol);

  RandomStream rng(5);
  const QuantumState rho = random_state({"a.q", "b.q"}, rng);
  const QuantumState same = apply_unitary(rho, gates::identity(1), {"b.q"});
  CHECK(oracle::max_abs_diff(same.matrix(), rho.matrix()) <= kAlgebraicTol);
}

TEST_CASE("apply_unitary: CNOT is an involution") {
  // matrix-product oracle: CNOT * CNOT = I
  const Matrix c = gates::cnot().matrix();
  CHECK(oracle::max_abs_diff(c * c, Matrix::Identity(4, 4)) <= kAlgebraicTol);

  RandomStream rng(13);
  const QuantumState rho = random_state({"a.q", "b.q", "c.q"}, rng);
  const QuantumState once = apply_unitary(rho, gates::cnot(), {"c.q", "a.q"});
  const QuantumState twice = apply_unitary(once, gates::cnot(), {"c.q", "a.q"});
  CHECK(oracle::max_abs_diff(twice.matrix(), rho.matrix()) <= kAlgebraicTol);
}

TEST_CASE("apply_unitary: errors on unknown label and arity mismatch") {
  const QuantumState zero = basis_state({"a.q"}, {0});
  CHECK_THROWS_WITH_AS(apply_unitary(zero, gates::pauli_x(), {"ghost.q"}),
                       doctest::Contains("ghost.q"), std::invalid_argument);
  CHECK_THROWS_AS(apply_unitary(zero, gates::cnot(), {"a.q"}),
                  std::invalid_argument);
}

TEST_CASE("apply_unitary: preserves purity, output states stay valid") {
  RandomStream rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const QuantumState rho = random_state({"a.q", "b.q"}, rng);
    const UnitaryOp u(2, oracle::random_unitary(2, rng));
    const QuantumState rotated = apply_unitary(rho, u, {"a.q", "b.q"});
    CHECK(purity(rotated) == doctest::Approx(purity(rho)).epsilon(1e-10));
    check_valid_state(rotated);
  }
}

TEST_CASE("apply_channel: identity channel and full depolarizing") {
  RandomStream rng(19);
  const QuantumState rho = random_state({"a.q", "b.q"}, rng);
  const KrausChannel id(1, {Matrix::Identity(2, 2)});
  CHECK(oracle::max_abs_diff(apply_channel(rho, id, {"b.q"}).matrix(),
                             rho.matrix()) <= kAlgebraicTol);

  const QuantumState any = random_state({"a.q"}, rng);
  const QuantumState twirled =
      apply_channel(any, depolarizing_channel(1.0), {"a.q"});
  CHECK(oracle::max_abs_diff(twirled.matrix(), 0.5 * Matrix::Identity(2, 2)) <=
        kStructuralTol);
}

TEST_CASE("apply_channel: hand-evaluated depolarizing(0.5) on |0>") {
  const QuantumState zero = basis_state({"a.q"}, {0});
  const QuantumState noisy =
      apply_channel(zero, depolarizing_channel(0.5), {"a.q"});
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 0.75;  // 1 - p/2 at p = 0.5
  expected(1, 1) = 0.25;
  CHECK(oracle::max_abs_diff(noisy.matrix(), expected) <= kAlgebraicTol);
}

TEST_CASE("partial_trace: maximally entangled marginals are I/2") {
  const QuantumState phi = bell_state(BellKind::phi_plus, "a.q", "b.q");
  CHECK(oracle::max_abs_diff(partial_trace(phi, {"a.q"}).matrix(),
                             0.5 * Matrix::Identity(2, 2)) <= kAlgebraicTol);

  const QuantumState psi = bell_state(BellKind::psi_plus, "a.q", "b.q");
  for (const char* keep : {"a.q", "b.q"}) {
    CHECK(oracle::max_abs_diff(partial_trace(psi, {keep}).matrix(),
                               0.5 * Matrix::Identity(2, 2)) <= kAlgebraicTol);
  }
}

TEST_CASE("partial_trace: product states factor exactly") {
  RandomStream rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const QuantumState rho = random_state({"x.q1", "x.q2"}, rng);
    const QuantumState sigma = random_state({"y.q"}, rng);
    const QuantumState joint = tensor(rho, sigma);
    CHECK(oracle::max_abs_diff(partial_trace(joint, {"x.q1", "x.q2"}).matrix(),
                               rho.matrix()) <= kAlgebraicTol);
    CHECK(oracle::max_abs_diff(partial_trace(joint, {"y.q"}).matrix(),
                               sigma.matrix()) <= kAlgebraicTol);
  }
}

TEST_CASE("partial_trace: keep order defines the output register order") {
  RandomStream rng(29);
  const QuantumState rho = random_state({"a.q", "b.q", "c.q"}, rng);
  const QuantumState forward = partial_trace(rho, {"a.q", "c.q"});
  const QuantumState reversed = partial_trace(rho, {"c.q", "a.q"});
  // swapping the keep order permutes the two-qubit matrix accordingly
  const Matrix perm = oracle::front_permutation(2, {1});
  CHECK(oracle::max_abs_diff(reversed.matrix(),
                             perm * forward.matrix() * perm.transpose()) <=
        kAlgebraicTol);
  CHECK(forward.register_labels()[0] == QubitLabel("a.q"));
  CHECK(reversed.register_labels()[0] == QubitLabel("c.q"));
}

TEST_CASE("partial_trace: rejects empty keep and unknown labels") {
  const QuantumState phi = bell_state(BellKind::phi_plus, "a.q", "b.q");
  CHECK_THROWS_AS(partial_trace(phi, {}), std::invalid_argument);
  CHECK_THROWS_WITH_AS(partial_trace(phi, {"nope.q"}),
                       doctest::Contains("nope.q"), std::invalid_argument);
}

TEST_CASE("fidelity: pure matches, orthogonal states, maximally mixed") {
  const QuantumState zero = basis_state({"a.q"}, {0});
  const QuantumState one = basis_state({"a.q"}, {1});
  CHECK(fidelity(zero, zero) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity(zero, one) == doctest::Approx(0.0).epsilon(1e-12));

  RandomStream rng(31);
  Vector psi(2);
  psi << Complex(rng.gaussian(), rng.gaussian()),
      Complex(rng.gaussian(), rng.gaussian());
  psi /= psi.norm();
  const QuantumState reference = pure_state({"a.q"}, psi);
  CHECK(fidelity(maximally_mixed({"a.q"}), reference) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fidelity: mixed references are rejected") {
  const QuantumState mixed = maximally_mixed({"a.q"});
  const QuantumState zero = basis_state({"a.q"}, {0});
  CHECK_THROWS_AS(fidelity(zero, mixed), std::invalid_argument);
}

TEST_CASE("fidelity: agrees with the direct trace formula") {
  RandomStream rng(37);
  for (int rep = 0; rep < 25; ++rep) {
    const QuantumState rho = random_state({"a.q", "b.q"}, rng);
    Vector psi(4);
    for (int i = 0; i < 4; ++i) {
      psi(i) = Complex(rng.gaussian(), rng.gaussian());
    }
    psi /= psi.norm();
    const QuantumState reference = pure_state({"a.q", "b.q"}, psi);
    const double via_trace =
        std::real((rho.matrix() * reference.matrix()).trace());
    CHECK(fidelity(rho, reference) == doctest::Approx(via_trace).epsilon(1e-12));
  }
}

TEST_CASE("purity: pure, mixed, and the Werner midpoint") {
  const QuantumState zero = basis_state({"a.q"}, {0});
  CHECK(purity(zero) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(purity(maximally_mixed({"a.q"})) == doctest::Approx(0.5).epsilon(1e-12));
  // direct 4x4 evaluation gives Tr rho^2 = 0.4375 at x = 0.5
  CHECK(purity(werner_pair(0.5, "a.q", "b.q")) ==
        doctest::Approx(0.4375).epsilon(1e-12));
}

TEST_CASE("bell_state: psi_plus entries and phi_plus marginals") {
  const QuantumState psi = bell_state(BellKind::psi_plus, "a.q", "b.q");
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = expected(1, 2) = expected(2, 1) = expected(2, 2) = 0.5;
  CHECK(oracle::max_abs_diff(psi.matrix(), expected) <= kAlgebraicTol);

  const QuantumState phi = bell_state(BellKind::phi_plus, "a.q", "b.q");
  for (const char* keep : {"a.q", "b.q"}) {
    CHECK(oracle::max_abs_diff(partial_trace(phi, {keep}).matrix(),
                               0.5 * Matrix::Identity(2, 2)) <= kAlgebraicTol);
  }
  CHECK_THROWS_AS(bell_state(BellKind::phi_plus, "a.q", "a.q"),
                  std::invalid_argument);
}

TEST_CASE("bell_state: numeric maximization of CHSH reaches 2 sqrt 2") {
  const QuantumState phi = bell_state(BellKind::phi_plus, "a.q", "b.q");
  // coarse grid then local refinement, independent of the canonical angles
  double best = 0.0;
  ChshAngles best_angles{0, 0, 0, 0};
  const int grid = 8;
  for (int ia = 0; ia < grid; ++ia) {
    for (int ib = 0; ib < grid; ++ib) {
      for (int ic = 0; ic < grid; ++ic) {
        for (int id = 0; id < grid; ++id) {
          const ChshAngles angles{ia * M_PI / grid, ib * M_PI / grid,
                                  ic * M_PI / grid, id * M_PI / grid};
          const double s = std::abs(chsh_value(phi, angles));
          if (s > best) {
            best = s;
            best_angles = angles;
          }
        }
      }
    }
  }
  double step = M_PI / grid;
  for (int iter = 0; iter < 60; ++iter) {
    bool improved = false;
    double* coords[] = {&best_angles.a, &best_angles.a_prime, &best_angles.b,
                        &best_angles.b_prime};
    for (double* c : coords) {
      for (double delta : {-step, step}) {
        *c += delta;
        const double s = std::abs(chsh_value(phi, best_angles));
        if (s > best) {
          best = s;
          improved = true;
        } else {
          *c -= delta;
        }
      }
    }
    if (!improved) {
      step /= 2;
    }
  }
  CHECK(best == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-6));
  CHECK(chsh_value(phi, chsh_optimal_angles()) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("ghz_state: amplitudes and marginals") {
  const QuantumState ghz = ghz_state({"a.q", "b.q", "c.q"});
  Matrix expected = Matrix::Zero(8, 8);
  expected(0, 0) = expected(0, 7) = expected(7, 0) = expected(7, 7) = 0.5;
  CHECK(oracle::max_abs_diff(ghz.matrix(), expected) <= kAlgebraicTol);

  CHECK(oracle::max_abs_diff(partial_trace(ghz, {"b.q"}).matrix(),
                             0.5 * Matrix::Identity(2, 2)) <= kAlgebraicTol);

  // two-qubit marginal is the separable classically-correlated mixture
  Matrix pair_expected = Matrix::Zero(4, 4);
  pair_expected(0, 0) = pair_expected(3, 3) = 0.5;
  CHECK(oracle::max_abs_diff(partial_trace(ghz, {"a.q", "c.q"}).matrix(),
                             pair_expected) <= kAlgebraicTol);

  CHECK_THROWS_AS(ghz_state({"a.q", "b.q"}), std::invalid_argument);
}

TEST_CASE("w_state: amplitudes, normalization, marginals") {
  const QuantumState w = w_state({"a.q", "b.q", "c.q"});
  const double amp = 1.0 / 3.0;  // squared amplitude of each excitation term
  Matrix expected = Matrix::Zero(8, 8);
  for (int i : {1, 2, 4}) {
    for (int j : {1, 2, 4}) {
      expected(i, j) = amp;
    }
  }
  CHECK(oracle::max_abs_diff(w.matrix(), expected) <= kAlgebraicTol);
  CHECK(std::abs(w.matrix().trace().real() - 1.0) <= kAlgebraicTol);

  for (int n : {3, 4}) {
    std::vector<QubitLabel> labels;
    for (int i = 0; i < n; ++i) {
      labels.emplace_back("w.q" + std::to_string(i));
    }
    const QuantumState state = w_state(labels);
    const QuantumState marginal = partial_trace(state, {labels[0]});
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = (n - 1.0) / n;
    m(1, 1) = 1.0 / n;
    CHECK(oracle::max_abs_diff(marginal.matrix(), m) <= kAlgebraicTol);
  }

  CHECK_THROWS_AS(w_state({"a.q", "b.q"}), std::invalid_argument);
}

TEST_CASE("measure_z: deterministic, unbiased, and collapsing") {
  RandomStream rng(41);
  const QuantumState zero = basis_state({"a.q"}, {0});
  for (int rep = 0; rep < 10; ++rep) {
    const MeasurementOutcome m = measure_z(zero, "a.q", rng);
    CHECK(m.outcome == 0);
    CHECK(m.probability == doctest::Approx(1.0).epsilon(1e-12));
  }

  const QuantumState mixed = maximally_mixed({"a.q"});
  int zeros = 0;
  const int reps = 20000;
  for (int rep = 0; rep < reps; ++rep) {
    const MeasurementOutcome m = measure_z(mixed, "a.q", rng);
    CHECK(m.probability == doctest::Approx(0.5).epsilon(1e-12));
    zeros += m.outcome == 0 ? 1 : 0;
  }
  // 3 sigma with sigma = sqrt(n)/2
  CHECK(std::abs(zeros - reps / 2) < 3.0 * std::sqrt(reps) / 2.0);

  const QuantumState phi = bell_state(BellKind::phi_plus, "a.q", "b.q");
  for (int rep = 0; rep < 20; ++rep) {
    const MeasurementOutcome m = measure_z(phi, "a.q", rng);
    const QuantumState partner = partial_trace(m.post_state, {"b.q"});
    const QuantumState collapsed = basis_state({"b.q"}, {m.outcome});
    CHECK(oracle::max_abs_diff(partner.matrix(), collapsed.matrix()) <=
          kAlgebraicTol);
  }
}

TEST_CASE("chsh_value: classical bound for product states") {
  RandomStream rng(43);
  const QuantumState product = basis_state({"a.q", "b.q"}, {0, 0});
  for (int rep = 0; rep < 50; ++rep) {
    const ChshAngles angles{rng.uniform() * 2 * M_PI, rng.uniform() * 2 * M_PI,
                            rng.uniform() * 2 * M_PI, rng.uniform() * 2 * M_PI};
    CHECK(std::abs(chsh_value(product, angles)) <= 2.0 + 1e-9);
  }
  CHECK_THROWS_AS(chsh_value(basis_state({"a.q"}, {0}), chsh_optimal_angles()),
                  std::invalid_argument);
}

TEST_CASE("chsh_value: linear in the Werner mixture") {
  for (double x : {0.0, 0.1, 0.2929, 0.5, 0.75, 1.0}) {
    const QuantumState pair = werner_pair(x, "a.q", "b.q");
    CHECK(chsh_value(pair, chsh_optimal_angles()) ==
          doctest::Approx((1.0 - x) * 2.0 * std::sqrt(2.0)).epsilon(1e-9));
  }
}

TEST_CASE("unitary and channel constructors reject invalid operators") {
  Matrix not_unitary = Matrix::Identity(2, 2);
  not_unitary(0, 0) = 1.5;
  CHECK_THROWS_AS(UnitaryOp(1, not_unitary), std::invalid_argument);

  // dropping a Kraus operator breaks trace preservation
  const KrausChannel good = depolarizing_channel(0.3);
  std::vector<Matrix> broken(good.operators().begin(),
                             good.operators().end() - 1);
  CHECK_THROWS_AS(KrausChannel(1, broken), std::invalid_argument);
}

TEST_CASE("state constructor enforces structural invariants") {
  Matrix bad_trace = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(QuantumState({"a.q"}, bad_trace), std::invalid_argument);

  Matrix not_hermitian = 0.5 * Matrix::Identity(2, 2);
  not_hermitian(0, 1) = Complex(0.3, 0.0);
  CHECK_THROWS_AS(QuantumState({"a.q"}, not_hermitian), std::invalid_argument);

  CHECK_THROWS_AS(QuantumState({"a.q", "a.q"}, 0.25 * Matrix::Identity(4, 4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(QubitLabel(""), std::invalid_argument);
}

TEST_CASE("oracle cross-validation on up to 4 qubits") {
  RandomStream rng(47);
  for (int n = 1; n <= 4; ++n) {
    std::vector<QubitLabel> labels;
    for (int i = 0; i < n; ++i) {
      labels.emplace_back("r.q" + std::to_string(i));
    }
    for (int rep = 0; rep < 8; ++rep) {
      const Matrix rho = oracle::random_density(n, rng);
      const QuantumState state(labels, rho);

      // one-qubit unitary on a random position
      const int p1 = static_cast<int>(rng.uniform() * n);
      const Matrix u1 = oracle::random_unitary(1, rng);
      CHECK(oracle::max_abs_diff(
                apply_unitary(state, UnitaryOp(1, u1), {labels[p1]}).matrix(),
                oracle::apply_unitary(rho, u1, n, {p1})) <= kAlgebraicTol);

      if (n >= 2) {
        // two-qubit unitary on a random ordered pair
        int pa = static_cast<int>(rng.uniform() * n);
        int pb = static_cast<int>(rng.uniform() * n);
        if (pb == pa) {
          pb = (pa + 1) % n;
        }
        const Matrix u2 = oracle::random_unitary(2, rng);
        CHECK(oracle::max_abs_diff(
                  apply_unitary(state, UnitaryOp(2, u2),
                                {labels[pa], labels[pb]})
                      .matrix(),
                  oracle::apply_unitary(rho, u2, n, {pa, pb})) <= kAlgebraicTol);

        // partial trace onto a random ordered pair
        CHECK(oracle::max_abs_diff(
                  partial_trace(state, {labels[pa], labels[pb]}).matrix(),
                  oracle::partial_trace(rho, n, {pa, pb})) <= kAlgebraicTol);
      }

      // channel cross-check
      const KrausChannel noise = depolarizing_channel(rng.uniform());
      CHECK(oracle::max_abs_diff(
                apply_channel(state, noise, {labels[p1]}).matrix(),
                oracle::apply_channel(rho, noise.operators(), n, {p1})) <=
            kAlgebraicTol);

      // every operation returns a valid state
      check_valid_state(apply_unitary(state, UnitaryOp(1, u1), {labels[p1]}));
      check_valid_state(apply_channel(state, noise, {labels[p1]}));
      check_valid_state(partial_trace(state, {labels[0]}));
    }
  }
}
