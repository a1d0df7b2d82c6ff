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
#include <string>
#include <vector>

#include "qrelay/noise.hpp"
#include "qrelay/quantum_state.hpp"
#include "qrelay/rng.hpp"

namespace qrelay {

enum class Role { sender, receiver, relay, adversary };

std::string to_string(Role role);
Role role_from_string(const std::string& name);

struct Node {
  std::string id;
  Role role;
  std::vector<QubitLabel> held_qubits;
  CoherenceSpec memory_coh{CoherenceSpec::kDefaultWindowUs,
                           CoherenceSpec::kDefaultWindowUs};
};

/// Node/edge view of the network: the photonic message path with its per-hop
/// attenuation, plus the endpoints that may share entangled pairs out of
/// band. Immutable after construction.
class Topology {
 public:
  Topology(std::vector<Node> nodes, std::vector<std::string> message_path,
           std::vector<AttenuationSpec> hop_attenuations);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::string>& message_path() const { return message_path_; }
  const std::vector<AttenuationSpec>& hop_attenuations() const {
    return hop_attenuations_;
  }

  const Node& node(const std::string& id) const;
  bool has_node(const std::string& id) const;
  int hop_count() const { return static_cast<int>(hop_attenuations_.size()); }

 private:
  std::vector<Node> nodes_;
  std::vector<std::string> message_path_;
  std::vector<AttenuationSpec> hop_attenuations_;
};

/// Five nodes (alice, r1, r2, r3, bob), message path alice->r1->r2->r3->bob,
/// 10 dB per hop.
Topology default_topology();

/// Lifecycle record of one pre-shared pair. Single-owner value: one trial
/// owns its links exclusively.
struct EntanglementLink {
  std::int64_t id;
  std::string endpoint_a;
  std::string endpoint_b;
  double degradation;    // Werner parameter the pair was created with
  QuantumState state;    // two qubits, labels qubit_a()/qubit_b()
  double created_at_us;
  bool consumed;

  const QubitLabel& qubit_a() const { return state.register_labels()[0]; }
  const QubitLabel& qubit_b() const { return state.register_labels()[1]; }
};

struct DistributionResult {
  std::vector<EntanglementLink> links;
  std::int64_t attempts;  // heralding attempts, for latency accounting
};

/// Distributes `count` heralded pairs between two endpoint nodes. Each
/// attempt survives heralding with probability 1 - herald_loss (one RNG draw
/// per attempt); survivors are Werner pairs at the given degradation.
/// Relays can never be endpoints. Throws DistributionError once any link
/// exceeds attempt_cap_per_link attempts.
DistributionResult distribute_pairs(const Topology& topo,
                                    const std::string& sender_id,
                                    const std::string& receiver_id, int count,
                                    double werner_x, double herald_loss,
                                    double now_us, RandomStream& rng,
                                    std::int64_t attempt_cap_per_link = 1000000);

/// True iff the link age fits the coherence window (inclusive boundary).
/// Rejects clocks running backwards.
bool coherence_ok(const EntanglementLink& link, double now_us,
                  const CoherenceSpec& coh);

/// Applies storage dephasing of (now - created_at) independently to each
/// qubit of the link state.
EntanglementLink age_link(const EntanglementLink& link, double now_us,
                          const CoherenceSpec& coh);

/// Marks the link used and scrubs its memory to I/4. A second consume is a
/// replay attempt and throws ReplayError.
EntanglementLink consume(EntanglementLink link);

}  // namespace qrelay
