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

#include <array>
#include <cstdint>
#include <optional>

#include "qrelay/graph.hpp"
#include "qrelay/noise.hpp"
#include "qrelay/quantum_state.hpp"
#include "qrelay/rng.hpp"

namespace qrelay {

/// Label of the message qubit that travels the relay path.
const QubitLabel& message_qubit();

enum class MessageKind { haar_random, fixed_basis, fixed_bloch };

/// A single-qubit message, realized as a pure state at construction time.
class MessageSpec {
 public:
  /// Uniformly random pure state (four gaussian draws, then normalization).
  static MessageSpec haar(RandomStream& rng);
  /// |0> or |1>.
  static MessageSpec basis(int bit);
  /// cos(theta/2) |0> + e^(i phi) sin(theta/2) |1>.
  static MessageSpec bloch(double theta, double phi);

  MessageKind kind() const { return kind_; }
  /// The encoded bit; only meaningful for fixed_basis messages.
  int basis_bit() const { return basis_bit_; }
  const QuantumState& state() const { return state_; }

 private:
  MessageSpec(MessageKind kind, int basis_bit, const Vector& amplitudes);

  MessageKind kind_;
  int basis_bit_;
  QuantumState state_;
};

/// The in-flight composite state: message qubit plus both key pairs. Once a
/// hop erases the photon the state is gone and only the flag remains.
struct EncodedPayload {
  std::optional<QuantumState> state;
  std::array<std::int64_t, 2> key_link_ids;
  bool erased;
  double emitted_at_us;
};

enum class DecodeStatus { ok, erased, expired, unauthorized, replay };

std::string to_string(DecodeStatus status);

struct DecodeResult {
  DecodeStatus status;
  std::optional<QuantumState> reconstructed;  // single qubit when present
  std::optional<double> fidelity_value;       // present iff reconstructed is
};

/// Masks the message with both key pairs and returns the composite payload.
///
/// The mask is a quantum one-time pad keyed entirely by shared entanglement:
/// an X mask controlled by the first pair's computational-basis correlation
/// (CNOT from the sender-side key qubit) and a Z mask controlled by the
/// second pair's conjugate-basis correlation (CZ with the key qubit
/// Hadamard-conjugated). Both masks are uniformly random to anyone without
/// the partner qubits, so the traced-out message is exactly I/2; the
/// receiver's identical local operations cancel both masks through the pair
/// correlations without any classical exchange.
///
/// Rejects consumed links (ReplayError) and links outside the coherence
/// window at `now_us` (ExpiredError).
EncodedPayload encode(const MessageSpec& msg, const EntanglementLink& link1,
                      const EntanglementLink& link2, double now_us,
                      const CoherenceSpec& coh);

/// encode without the lifecycle checks: masks against the links' current
/// states whatever they hold. This is the path a replayed or misused key
/// actually takes; normal callers want encode().
EncodedPayload encode_raw(const MessageSpec& msg, const EntanglementLink& link1,
                          const EntanglementLink& link2, double now_us);

/// One pass-through hop: the photon survives with probability
/// 10^(-db/10) (one RNG draw); survivors pick up hop_depol of depolarizing
/// noise on the message qubit only. Key qubits are never touched.
EncodedPayload relay_forward(const EncodedPayload& payload,
                             const AttenuationSpec& hop, double hop_depol,
                             RandomStream& rng);

/// The receiver's unmask. Statuses, in order of precedence: erased payload;
/// replay (a referenced link is already consumed); expired (coherence window
/// exceeded at now_us). Otherwise the unmask circuit runs: against the
/// payload's own key qubits when the link ids match (status ok, links
/// consumed), or against the wrong pairs' qubits when they do not (status
/// unauthorized -- mechanically fine, informationally useless).
DecodeResult decode(const EncodedPayload& payload, EntanglementLink& link1,
                    EntanglementLink& link2, const MessageSpec& msg,
                    double now_us, const CoherenceSpec& coh);

enum class AdversaryStrategy {
  trace_out,    // read the message marginal directly
  fresh_pairs,  // substitute own pristine pairs and run the full unmask
};

/// Interception without the partner qubits. `msg` is used only to score the
/// adversary's reconstruction; the strategies themselves never see it.
DecodeResult adversary_decode(const EncodedPayload& payload,
                              AdversaryStrategy strategy, const MessageSpec& msg);

/// Decode against links at least one of which was already consumed (their
/// memories scrubbed to I/4). The circuit runs and produces a state; the
/// status is always replay. The payload must have been built against the
/// links' scrubbed states (see encode_raw).
DecodeResult replay_decode(const EncodedPayload& payload,
                           const EntanglementLink& link1,
                           const EntanglementLink& link2,
                           const MessageSpec& msg, double now_us);

}  // namespace qrelay
