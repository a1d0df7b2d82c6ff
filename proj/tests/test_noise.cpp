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
#include "qrelay/noise.hpp"
#include "qrelay/quantum_state.hpp"

using namespace qrelay;

namespace {

void check_trace_preserving(const KrausChannel& ch) {
  const Eigen::Index dim = Eigen::Index{1} << ch.arity();
  Matrix sum = Matrix::Zero(dim, dim);
  for (const Matrix& k : ch.operators()) {
    sum += k.adjoint() * k;
  }
  CHECK((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() <=
        kStructuralTol);
}

QuantumState plus_state() {
  Vector psi(2);
  psi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return pure_state({"a.q"}, psi);
}

}  // namespace

TEST_CASE("depolarizing_channel: endpoints and range checks") {
  const KrausChannel id = depolarizing_channel(0.0);
  CHECK(id.operators().size() == 1);
  CHECK(oracle::max_abs_diff(id.operators()[0], Matrix::Identity(2, 2)) == 0.0);

  RandomStream rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const QuantumState rho({"a.q"}, oracle::random_density(1, rng));
    const QuantumState out = apply_channel(rho, depolarizing_channel(1.0), {"a.q"});
    CHECK(oracle::max_abs_diff(out.matrix(), 0.5 * Matrix::Identity(2, 2)) <=
          kStructuralTol);
  }

  CHECK_THROWS_AS(depolarizing_channel(-0.01), std::invalid_argument);
  CHECK_THROWS_AS(depolarizing_channel(1.01), std::invalid_argument);
}

TEST_CASE("depolarizing_channel: off-diagonals scale by 1 - p") {
  const QuantumState noisy =
      apply_channel(plus_state(), depolarizing_channel(0.4), {"a.q"});
  CHECK(std::abs(noisy.matrix()(0, 1).real() - 0.5 * 0.6) <= kAlgebraicTol);
  CHECK(std::abs(noisy.matrix()(0, 0).real() - 0.5) <= kAlgebraicTol);
}

TEST_CASE("depolarizing_channel: trace-preserving across the p grid") {
  for (double p = 0.0; p <= 1.0; p += 0.05) {
    check_trace_preserving(depolarizing_channel(p));
  }
}

TEST_CASE("werner_pair: endpoints of the mixture") {
  const QuantumState pristine = werner_pair(0.0, "a.q", "b.q");
  CHECK(oracle::max_abs_diff(
            pristine.matrix(),
            bell_state(BellKind::phi_plus, "a.q", "b.q").matrix()) == 0.0);

  const QuantumState flat = werner_pair(1.0, "a.q", "b.q");
  CHECK(oracle::max_abs_diff(flat.matrix(), 0.25 * Matrix::Identity(4, 4)) ==
        0.0);

  CHECK_THROWS_AS(werner_pair(-0.1, "a.q", "b.q"), std::invalid_argument);
  CHECK_THROWS_AS(werner_pair(1.1, "a.q", "b.q"), std::invalid_argument);
}

TEST_CASE("werner_pair: CHSH crosses the classical bound at 1 - 1/sqrt(2)") {
  for (double x = 0.0; x <= 1.0 + 1e-12; x += 0.1) {
    CHECK(chsh_value(werner_pair(x, "a.q", "b.q"), chsh_optimal_angles()) ==
          doctest::Approx((1.0 - x) * 2.0 * std::sqrt(2.0)).epsilon(1e-9));
  }
  const double crossing = 1.0 - 1.0 / std::sqrt(2.0);
  CHECK(chsh_value(werner_pair(crossing, "a.q", "b.q"), chsh_optimal_angles()) ==
        doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("werner_pair: PSD everywhere, purity strictly decreasing") {
  double previous = 2.0;
  for (double x = 0.0; x <= 1.0 + 1e-12; x += 0.05) {
    const QuantumState pair = werner_pair(std::min(x, 1.0), "a.q", "b.q");
    CHECK(pair.min_eigenvalue() >= -kStructuralTol);
    const double pu = purity(pair);
    CHECK(pu < previous);
    previous = pu;
  }
}

TEST_CASE("survival_probability: decibel anchors") {
  CHECK(survival_probability(AttenuationSpec(0.0)) == doctest::Approx(1.0));
  CHECK(survival_probability(AttenuationSpec(10.0)) ==
        doctest::Approx(0.1).epsilon(1e-12));
  CHECK(survival_probability(AttenuationSpec(30.0)) ==
        doctest::Approx(0.001).epsilon(1e-12));
  CHECK_THROWS_AS(AttenuationSpec(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(AttenuationSpec(61.0), std::invalid_argument);
}

TEST_CASE("survival_probability: multiplicative over hops, strictly decreasing") {
  RandomStream rng(5);
  double previous = 2.0;
  for (double db = 0.0; db <= 60.0; db += 2.5) {
    const double p = survival_probability(AttenuationSpec(db));
    CHECK(p < previous);
    previous = p;
  }
  for (int rep = 0; rep < 50; ++rep) {
    const double a = rng.uniform() * 30.0;
    const double b = rng.uniform() * 30.0;
    const double combined = survival_probability(AttenuationSpec(a + b));
    const double product = survival_probability(AttenuationSpec(a)) *
                           survival_probability(AttenuationSpec(b));
    CHECK(std::abs(combined - product) <= kAlgebraicTol);
  }
}

TEST_CASE("sample_erasure: endpoints, rate, and draw accounting") {
  RandomStream rng(7);
  for (int rep = 0; rep < 100; ++rep) {
    CHECK(sample_erasure(1.0, rng));
    CHECK_FALSE(sample_erasure(0.0, rng));
  }

  const std::uint64_t before = rng.draws();
  sample_erasure(0.85, rng);
  CHECK(rng.draws() == before + 1);

  int survived = 0;
  const int reps = 100000;
  for (int rep = 0; rep < reps; ++rep) {
    survived += sample_erasure(0.85, rng) ? 1 : 0;
  }
  const double sigma = std::sqrt(reps * 0.85 * 0.15);
  CHECK(std::abs(survived - reps * 0.85) < 3.0 * sigma);
}

TEST_CASE("dephasing_channel: identity at zero, full dephasing in the limit") {
  const CoherenceSpec coh(3.0, 3.0);
  const KrausChannel none = dephasing_channel(0.0, coh);
  CHECK(none.operators().size() == 1);

  const QuantumState far =
      apply_channel(plus_state(), dephasing_channel(1e6, coh), {"a.q"});
  CHECK(std::abs(far.matrix()(0, 1)) <= kStructuralTol);
  CHECK(far.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(dephasing_channel(-0.1, coh), std::invalid_argument);
}

TEST_CASE("dephasing_channel: off-diagonal decay at one T2") {
  const CoherenceSpec coh(3.0, 3.0);
  const QuantumState dephased =
      apply_channel(plus_state(), dephasing_channel(3.0, coh), {"a.q"});
  CHECK(dephased.matrix()(0, 1).real() ==
        doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("dephasing_channel: composes additively in elapsed time") {
  const CoherenceSpec coh(2.0, 3.0);
  RandomStream rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const double t1 = rng.uniform() * 4.0;
    const double t2 = rng.uniform() * 4.0;
    const QuantumState rho({"a.q"}, oracle::random_density(1, rng));
    const QuantumState stepwise =
        apply_channel(apply_channel(rho, dephasing_channel(t1, coh), {"a.q"}),
                      dephasing_channel(t2, coh), {"a.q"});
    const QuantumState direct =
        apply_channel(rho, dephasing_channel(t1 + t2, coh), {"a.q"});
    CHECK(oracle::max_abs_diff(stepwise.matrix(), direct.matrix()) <=
          kStructuralTol);
  }
  check_trace_preserving(dephasing_channel(0.7, coh));
  check_trace_preserving(dephasing_channel(5.0, coh));
}

TEST_CASE("coherence spec rejects non-positive parameters") {
  CHECK_THROWS_AS(CoherenceSpec(0.0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(CoherenceSpec(3.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(CoherenceSpec(-1.0, 3.0), std::invalid_argument);
}
