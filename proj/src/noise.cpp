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

#include "qrelay/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "qrelay/entangled_states.hpp"
#include "qrelay/gates.hpp"

namespace qrelay {

AttenuationSpec::AttenuationSpec(double db) : db_(db) {
  if (!(db >= 0.0 && db <= 60.0)) {
    throw std::invalid_argument("qrelay: attenuation must lie in [0, 60] dB");
  }
}

CoherenceSpec::CoherenceSpec(double t2_us, double window_us)
    : t2_us_(t2_us), window_us_(window_us) {
  if (!(t2_us > 0.0)) {
    throw std::invalid_argument("qrelay: T2 must be positive");
  }
  if (!(window_us > 0.0)) {
    throw std::invalid_argument("qrelay: coherence window must be positive");
  }
}

KrausChannel depolarizing_channel(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("qrelay: depolarizing strength must lie in [0, 1]");
  }
  if (p == 0.0) {
    return KrausChannel(1, {Matrix::Identity(2, 2)});
  }
  std::vector<Matrix> kraus;
  kraus.push_back(std::sqrt(1.0 - 0.75 * p) * Matrix::Identity(2, 2));
  kraus.push_back(std::sqrt(0.25 * p) * gates::pauli_x().matrix());
  kraus.push_back(std::sqrt(0.25 * p) * gates::pauli_y().matrix());
  kraus.push_back(std::sqrt(0.25 * p) * gates::pauli_z().matrix());
  return KrausChannel(1, std::move(kraus));
}

QuantumState werner_pair(double x, const QubitLabel& a, const QubitLabel& b) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("qrelay: degradation must lie in [0, 1]");
  }
  const QuantumState pair = bell_state(BellKind::phi_plus, a, b);
  const Matrix mixed =
      (1.0 - x) * pair.matrix() + (x / 4.0) * Matrix::Identity(4, 4);
  return QuantumState({a, b}, mixed);
}

double survival_probability(const AttenuationSpec& att) {
  return std::pow(10.0, -att.db() / 10.0);
}

bool sample_erasure(double p_survive, RandomStream& rng) {
  if (!(p_survive >= 0.0 && p_survive <= 1.0)) {
    throw std::invalid_argument("qrelay: survival probability must lie in [0, 1]");
  }
  return rng.bernoulli(p_survive);
}

KrausChannel dephasing_channel(double elapsed_us, const CoherenceSpec& coh) {
  if (!(elapsed_us >= 0.0)) {
    throw std::invalid_argument("qrelay: elapsed time must be non-negative");
  }
  const double gamma = std::exp(-elapsed_us / coh.t2_us());
  std::vector<Matrix> kraus;
  kraus.push_back(std::sqrt((1.0 + gamma) / 2.0) * Matrix::Identity(2, 2));
  if (gamma < 1.0) {
    kraus.push_back(std::sqrt((1.0 - gamma) / 2.0) * gates::pauli_z().matrix());
  }
  return KrausChannel(1, std::move(kraus));
}

}  // namespace qrelay
