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

#include "qrelay/protocol.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "qrelay/entangled_states.hpp"
#include "qrelay/errors.hpp"
#include "qrelay/gates.hpp"

namespace qrelay {

const QubitLabel& message_qubit() {
  static const QubitLabel label("msg.M");
  return label;
}

MessageSpec::MessageSpec(MessageKind kind, int basis_bit, const Vector& amplitudes)
    : kind_(kind),
      basis_bit_(basis_bit),
      state_(pure_state({message_qubit()}, amplitudes)) {}

MessageSpec MessageSpec::haar(RandomStream& rng) {
  Vector psi(2);
  psi(0) = Complex(rng.gaussian(), rng.gaussian());
  psi(1) = Complex(rng.gaussian(), rng.gaussian());
  psi /= psi.norm();
  return MessageSpec(MessageKind::haar_random, -1, psi);
}

MessageSpec MessageSpec::basis(int bit) {
  if (bit != 0 && bit != 1) {
    throw std::invalid_argument("qrelay: basis message bit must be 0 or 1");
  }
  Vector psi = Vector::Zero(2);
  psi(bit) = 1.0;
  return MessageSpec(MessageKind::fixed_basis, bit, psi);
}

MessageSpec MessageSpec::bloch(double theta, double phi) {
  Vector psi(2);
  psi(0) = std::cos(theta / 2.0);
  psi(1) = std::exp(Complex(0.0, phi)) * std::sin(theta / 2.0);
  return MessageSpec(MessageKind::fixed_bloch, -1, psi);
}

std::string to_string(DecodeStatus status) {
  switch (status) {
    case DecodeStatus::ok:
      return "ok";
    case DecodeStatus::erased:
      return "erased";
    case DecodeStatus::expired:
      return "expired";
    case DecodeStatus::unauthorized:
      return "unauthorized";
    case DecodeStatus::replay:
      return "replay";
  }
  return "unknown";
}

namespace {

// X mask keyed on the pair's computational-basis correlation, then Z mask
// keyed on the second pair's conjugate-basis correlation. The sender and
// receiver run the same circuit with their own key qubits; on a phi+ pair
// the two applications cancel branch by branch.
QuantumState apply_mask_circuit(QuantumState state, const QubitLabel& x_key,
                                const QubitLabel& z_key) {
  state = apply_unitary(state, gates::cnot(), {x_key, message_qubit()});
  state = apply_unitary(state, gates::hadamard(), {z_key});
  state = apply_unitary(state, gates::cz(), {z_key, message_qubit()});
  state = apply_unitary(state, gates::hadamard(), {z_key});
  return state;
}

DecodeResult scored_result(DecodeStatus status, QuantumState reconstructed,
                           const MessageSpec& msg) {
  const double f = fidelity(reconstructed, msg.state());
  return DecodeResult{status, std::move(reconstructed), f};
}

}  // namespace

EncodedPayload encode(const MessageSpec& msg, const EntanglementLink& link1,
                      const EntanglementLink& link2, double now_us,
                      const CoherenceSpec& coh) {
  if (link1.consumed || link2.consumed) {
    throw ReplayError("qrelay: encode against a consumed link");
  }
  if (!coherence_ok(link1, now_us, coh) || !coherence_ok(link2, now_us, coh)) {
    throw ExpiredError("qrelay: encode against an expired link");
  }
  return encode_raw(msg, link1, link2, now_us);
}

EncodedPayload encode_raw(const MessageSpec& msg, const EntanglementLink& link1,
                          const EntanglementLink& link2, double now_us) {
  QuantumState composite = tensor(tensor(msg.state(), link1.state), link2.state);
  composite = apply_mask_circuit(std::move(composite), link1.qubit_a(),
                                 link2.qubit_a());
  return EncodedPayload{std::move(composite),
                        {link1.id, link2.id},
                        false,
                        now_us};
}

EncodedPayload relay_forward(const EncodedPayload& payload,
                             const AttenuationSpec& hop, double hop_depol,
                             RandomStream& rng) {
  if (payload.erased) {
    throw std::invalid_argument("qrelay: cannot forward an erased payload");
  }
  if (!sample_erasure(survival_probability(hop), rng)) {
    return EncodedPayload{std::nullopt, payload.key_link_ids, true,
                          payload.emitted_at_us};
  }
  EncodedPayload out = payload;
  if (hop_depol > 0.0) {
    out.state = apply_channel(*out.state, depolarizing_channel(hop_depol),
                              {message_qubit()});
  }
  return out;
}

DecodeResult decode(const EncodedPayload& payload, EntanglementLink& link1,
                    EntanglementLink& link2, const MessageSpec& msg,
                    double now_us, const CoherenceSpec& coh) {
  if (payload.erased) {
    return DecodeResult{DecodeStatus::erased, std::nullopt, std::nullopt};
  }
  if (link1.consumed || link2.consumed) {
    return DecodeResult{DecodeStatus::replay, std::nullopt, std::nullopt};
  }
  if (!coherence_ok(link1, now_us, coh) || !coherence_ok(link2, now_us, coh)) {
    return DecodeResult{DecodeStatus::expired, std::nullopt, std::nullopt};
  }

  const bool ids_match = payload.key_link_ids[0] == link1.id &&
                         payload.key_link_ids[1] == link2.id;
  if (!ids_match) {
    // Wrong key material. The unmask still runs, against pairs that carry no
    // correlation with the payload's masks, so it cannot fail loudly -- it
    // just reconstructs noise.
    QuantumState masked = partial_trace(*payload.state, {message_qubit()});
    QuantumState with_keys =
        tensor(tensor(masked, link1.state), link2.state);
    with_keys = apply_mask_circuit(std::move(with_keys), link1.qubit_b(),
                                   link2.qubit_b());
    QuantumState reconstructed = partial_trace(with_keys, {message_qubit()});
    link1 = consume(std::move(link1));
    link2 = consume(std::move(link2));
    return scored_result(DecodeStatus::unauthorized, std::move(reconstructed),
                         msg);
  }

  QuantumState unmasked = apply_mask_circuit(*payload.state, link1.qubit_b(),
                                             link2.qubit_b());
  QuantumState reconstructed = partial_trace(unmasked, {message_qubit()});
  link1 = consume(std::move(link1));
  link2 = consume(std::move(link2));
  return scored_result(DecodeStatus::ok, std::move(reconstructed), msg);
}

DecodeResult adversary_decode(const EncodedPayload& payload,
                              AdversaryStrategy strategy, const MessageSpec& msg) {
  if (payload.erased) {
    throw std::invalid_argument("qrelay: cannot intercept an erased payload");
  }
  QuantumState intercepted = partial_trace(*payload.state, {message_qubit()});
  if (strategy == AdversaryStrategy::trace_out) {
    return scored_result(DecodeStatus::unauthorized, std::move(intercepted), msg);
  }

  // fresh_pairs: substitute pristine pairs of the adversary's own and run the
  // receiver circuit with them. They share no correlation with the sender's
  // masks, so the twirl survives intact.
  const QuantumState pair1 =
      bell_state(BellKind::phi_plus, QubitLabel("eve.A1"), QubitLabel("eve.B1"));
  const QuantumState pair2 =
      bell_state(BellKind::phi_plus, QubitLabel("eve.A2"), QubitLabel("eve.B2"));
  QuantumState with_keys = tensor(tensor(intercepted, pair1), pair2);
  with_keys = apply_mask_circuit(std::move(with_keys), QubitLabel("eve.B1"),
                                 QubitLabel("eve.B2"));
  QuantumState reconstructed = partial_trace(with_keys, {message_qubit()});
  return scored_result(DecodeStatus::unauthorized, std::move(reconstructed), msg);
}

DecodeResult replay_decode(const EncodedPayload& payload,
                           const EntanglementLink& link1,
                           const EntanglementLink& link2,
                           const MessageSpec& msg, double now_us) {
  (void)now_us;  // reuse is flagged regardless of the clock
  if (!link1.consumed && !link2.consumed) {
    throw std::invalid_argument(
        "qrelay: replay_decode requires at least one consumed link");
  }
  if (payload.erased) {
    return DecodeResult{DecodeStatus::erased, std::nullopt, std::nullopt};
  }
  QuantumState unmasked = apply_mask_circuit(*payload.state, link1.qubit_b(),
                                             link2.qubit_b());
  QuantumState reconstructed = partial_trace(unmasked, {message_qubit()});
  DecodeResult result =
      scored_result(DecodeStatus::replay, std::move(reconstructed), msg);
  return result;
}

}  // namespace qrelay
