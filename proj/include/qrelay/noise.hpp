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
#include "qrelay/rng.hpp"

namespace qrelay {

/// Per-hop optical attenuation in decibels; survival probability is
/// 10^(-db/10).
class AttenuationSpec {
 public:
  explicit AttenuationSpec(double db);

  double db() const { return db_; }

 private:
  double db_;
};

/// Quantum-memory coherence parameters in microseconds: T2 dephasing time
/// and the hard window after which a stored link is considered expired.
class CoherenceSpec {
 public:
  CoherenceSpec(double t2_us, double window_us);

  double t2_us() const { return t2_us_; }
  double window_us() const { return window_us_; }

  static constexpr double kDefaultWindowUs = 3.0;

 private:
  double t2_us_;
  double window_us_;
};

/// Single-qubit depolarizing channel with Kraus set
/// { sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z }.
/// p = 1 maps every input to I/2.
KrausChannel depolarizing_channel(double p);

/// Degraded entangled pair (1-x) |phi+><phi+| + x I/4.
QuantumState werner_pair(double x, const QubitLabel& a, const QubitLabel& b);

/// 10^(-db/10).
double survival_probability(const AttenuationSpec& att);

/// One Bernoulli draw: true with probability p_survive. Consumes exactly one
/// draw from the stream.
bool sample_erasure(double p_survive, RandomStream& rng);

/// Single-qubit phase damping after `elapsed_us` of storage: off-diagonals
/// decay by gamma = exp(-elapsed/T2). Kraus set
/// { sqrt((1+gamma)/2) I, sqrt((1-gamma)/2) Z }.
KrausChannel dephasing_channel(double elapsed_us, const CoherenceSpec& coh);

}  // namespace qrelay
