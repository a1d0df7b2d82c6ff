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

#include <cstdint>
#include <random>

namespace qrelay {

/// Deterministic random stream owned by exactly one caller at a time.
///
/// The engine is std::mt19937_64 (its output sequence is pinned by the
/// standard) and all value mappings are implemented here, so a given seed
/// produces the same draws on every platform. sample counts are exposed so
/// tests can assert how many draws an operation consumed.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    ++draws_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; consumes two uniforms per pair.
  double gaussian();

  /// True with probability p; consumes exactly one uniform draw.
  bool bernoulli(double p) { return uniform() < p; }

  /// Number of uniform draws consumed so far.
  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Mixes (seed, a, b) into an independent stream seed. Pure function, so
/// per-trial streams are reproducible no matter how work is scheduled.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b);

}  // namespace qrelay
