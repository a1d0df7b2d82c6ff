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

#include "qrelay/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "qrelay/errors.hpp"

namespace qrelay {

std::string to_string(Role role) {
  switch (role) {
    case Role::sender:
      return "sender";
    case Role::receiver:
      return "receiver";
    case Role::relay:
      return "relay";
    case Role::adversary:
      return "adversary";
  }
  return "unknown";
}

Role role_from_string(const std::string& name) {
  if (name == "sender") return Role::sender;
  if (name == "receiver") return Role::receiver;
  if (name == "relay") return Role::relay;
  if (name == "adversary") return Role::adversary;
  throw std::invalid_argument("qrelay: unknown node role '" + name + "'");
}

Topology::Topology(std::vector<Node> nodes, std::vector<std::string> message_path,
                   std::vector<AttenuationSpec> hop_attenuations)
    : nodes_(std::move(nodes)),
      message_path_(std::move(message_path)),
      hop_attenuations_(std::move(hop_attenuations)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
      if (nodes_[i].id == nodes_[j].id) {
        throw std::invalid_argument("qrelay: duplicate node id '" + nodes_[i].id +
                                    "'");
      }
    }
  }
  if (message_path_.size() < 2) {
    throw std::invalid_argument("qrelay: message path needs at least two nodes");
  }
  if (hop_attenuations_.size() != message_path_.size() - 1) {
    throw std::invalid_argument(
        "qrelay: need exactly one attenuation entry per message-path edge");
  }
  for (const std::string& id : message_path_) {
    if (!has_node(id)) {
      throw std::invalid_argument("qrelay: message path references unknown node '" +
                                  id + "'");
    }
  }
  if (node(message_path_.front()).role != Role::sender) {
    throw std::invalid_argument("qrelay: message path must start at a sender");
  }
  if (node(message_path_.back()).role != Role::receiver) {
    throw std::invalid_argument("qrelay: message path must end at a receiver");
  }
  for (std::size_t i = 1; i + 1 < message_path_.size(); ++i) {
    if (node(message_path_[i]).role != Role::relay) {
      throw std::invalid_argument("qrelay: interior path node '" +
                                  message_path_[i] + "' must be a relay");
    }
  }
}

bool Topology::has_node(const std::string& id) const {
  return std::any_of(nodes_.begin(), nodes_.end(),
                     [&](const Node& n) { return n.id == id; });
}

const Node& Topology::node(const std::string& id) const {
  for (const Node& n : nodes_) {
    if (n.id == id) {
      return n;
    }
  }
  throw std::invalid_argument("qrelay: unknown node '" + id + "'");
}

Topology default_topology() {
  std::vector<Node> nodes = {
      Node{"alice", Role::sender, {}, CoherenceSpec(3.0, 3.0)},
      Node{"r1", Role::relay, {}, CoherenceSpec(3.0, 3.0)},
      Node{"r2", Role::relay, {}, CoherenceSpec(3.0, 3.0)},
      Node{"r3", Role::relay, {}, CoherenceSpec(3.0, 3.0)},
      Node{"bob", Role::receiver, {}, CoherenceSpec(3.0, 3.0)},
  };
  std::vector<std::string> path = {"alice", "r1", "r2", "r3", "bob"};
  std::vector<AttenuationSpec> hops(4, AttenuationSpec(10.0));
  return Topology(std::move(nodes), std::move(path), std::move(hops));
}

DistributionResult distribute_pairs(const Topology& topo,
                                    const std::string& sender_id,
                                    const std::string& receiver_id, int count,
                                    double werner_x, double herald_loss,
                                    double now_us, RandomStream& rng,
                                    std::int64_t attempt_cap_per_link) {
  if (count < 1) {
    throw std::invalid_argument("qrelay: pair count must be at least 1");
  }
  if (!(herald_loss >= 0.0 && herald_loss <= 1.0)) {
    throw std::invalid_argument("qrelay: herald loss must lie in [0, 1]");
  }
  const Node& sender = topo.node(sender_id);
  const Node& receiver = topo.node(receiver_id);
  if (sender.id == receiver.id) {
    throw std::invalid_argument("qrelay: link endpoints must be distinct");
  }
  // Relays are pass-through; they never hold key qubits.
  if (sender.role == Role::relay || receiver.role == Role::relay) {
    throw std::invalid_argument("qrelay: relays cannot be link endpoints");
  }

  const double p_survive = 1.0 - herald_loss;
  DistributionResult result;
  result.attempts = 0;
  result.links.reserve(count);
  for (int k = 1; k <= count; ++k) {
    std::int64_t attempts_this_link = 0;
    for (;;) {
      ++attempts_this_link;
      ++result.attempts;
      if (sample_erasure(p_survive, rng)) {
        break;
      }
      if (attempts_this_link >= attempt_cap_per_link) {
        throw DistributionError("qrelay: entanglement distribution gave up after " +
                                std::to_string(attempts_this_link) +
                                " attempts for one link");
      }
    }
    const QubitLabel qa(sender.id + ".A" + std::to_string(k));
    const QubitLabel qb(receiver.id + ".B" + std::to_string(k));
    result.links.push_back(EntanglementLink{
        k, sender.id, receiver.id, werner_x, werner_pair(werner_x, qa, qb),
        now_us, false});
  }
  return result;
}

bool coherence_ok(const EntanglementLink& link, double now_us,
                  const CoherenceSpec& coh) {
  if (now_us < link.created_at_us) {
    throw std::invalid_argument("qrelay: clock ran backwards across a link");
  }
  return now_us - link.created_at_us <= coh.window_us();
}

EntanglementLink age_link(const EntanglementLink& link, double now_us,
                          const CoherenceSpec& coh) {
  if (now_us < link.created_at_us) {
    throw std::invalid_argument("qrelay: clock ran backwards across a link");
  }
  const KrausChannel dephase = dephasing_channel(now_us - link.created_at_us, coh);
  EntanglementLink aged = link;
  aged.state = apply_channel(aged.state, dephase, {link.qubit_a()});
  aged.state = apply_channel(aged.state, dephase, {link.qubit_b()});
  return aged;
}

EntanglementLink consume(EntanglementLink link) {
  if (link.consumed) {
    throw ReplayError("qrelay: link " + std::to_string(link.id) +
                      " was already consumed");
  }
  link.consumed = true;
  link.state = maximally_mixed({link.qubit_a(), link.qubit_b()});
  return link;
}

}  // namespace qrelay
