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

#include "qrelay/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qrelay/errors.hpp"

namespace qrelay {

using nlohmann::json;

LatencyComparison latency_compare(const LatencyParams& p) {
  if (p.hops < 1) {
    throw ConfigError("latency model needs at least one hop");
  }
  if (p.per_hop_delay < 0 || p.classical_rtt < 0 || p.handshake_rounds < 0 ||
      p.reconciliation_time < 0) {
    throw ConfigError("latency parameters must be non-negative");
  }
  const double proposed = p.hops * p.per_hop_delay;
  const double baseline = proposed + p.handshake_rounds * p.classical_rtt +
                          p.reconciliation_time;
  if (baseline == 0.0) {
    throw ConfigError("latency baseline is zero");
  }
  return LatencyComparison{proposed, baseline, 1.0 - proposed / baseline};
}

double haar_average_fidelity(double x_eff) {
  const double p_clean = (1.0 - x_eff / 2.0) * (1.0 - x_eff / 2.0);
  return (1.0 + 2.0 * p_clean) / 3.0;
}

double calibrate_blend(double anchor_x, double anchor_fidelity) {
  if (!(anchor_x > 0.0 && anchor_x <= 1.0)) {
    throw ConfigError("calibration anchor x must lie in (0, 1]");
  }
  if (!(anchor_fidelity > 1.0 / 3.0 && anchor_fidelity <= 1.0)) {
    throw ConfigError("anchor fidelity outside the invertible range (1/3, 1]");
  }
  const double x_eff = 2.0 * (1.0 - std::sqrt((3.0 * anchor_fidelity - 1.0) / 2.0));
  if (x_eff > 1.0 + 1e-12) {
    throw ConfigError("anchor fidelity implies degradation beyond 1");
  }
  const double beta = x_eff / anchor_x;
  if (beta > 1.0 + 1e-12) {
    throw ConfigError("anchor point implies a blend factor beyond 1");
  }
  return std::clamp(beta, 0.0, 1.0);
}

double resolve_blend_beta(const ExperimentConfig& cfg) {
  if (cfg.blend_beta.has_value()) {
    return *cfg.blend_beta;
  }
  return calibrate_blend(0.25, 0.972);
}

// ---------------------------------------------------------------------------
// Config parsing

namespace {

void require_keys(const json& obj, const char* where,
                  std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError(std::string("unknown key '") + item.key() + "' in " +
                        where);
    }
  }
}

double get_number(const json& j, const char* key) {
  if (!j.at(key).is_number()) {
    throw ConfigError(std::string("'") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

Topology parse_topology(const json& j, const CoherenceSpec& coh) {
  require_keys(j, "topology", {"nodes", "message_path", "hop_attenuation_db"});

  std::vector<Node> nodes;
  std::vector<std::string> path;
  if (j.contains("nodes") != j.contains("message_path")) {
    throw ConfigError("topology needs both 'nodes' and 'message_path' or neither");
  }
  if (j.contains("nodes")) {
    for (const json& n : j.at("nodes")) {
      require_keys(n, "topology.nodes[]", {"id", "role"});
      nodes.push_back(Node{n.at("id").get<std::string>(),
                           role_from_string(n.at("role").get<std::string>()),
                           {},
                           coh});
    }
    path = j.at("message_path").get<std::vector<std::string>>();
  } else {
    const Topology def = default_topology();
    nodes = def.nodes();
    for (Node& n : nodes) {
      n.memory_coh = coh;
    }
    path = def.message_path();
  }

  std::vector<AttenuationSpec> hops;
  if (j.contains("hop_attenuation_db")) {
    for (const json& db : j.at("hop_attenuation_db")) {
      hops.emplace_back(db.get<double>());
    }
  } else {
    hops.assign(path.size() - 1, AttenuationSpec(10.0));
  }
  try {
    return Topology(std::move(nodes), std::move(path), std::move(hops));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

LatencyParams parse_latency(const json& j) {
  require_keys(j, "latency",
               {"hops", "per_hop_delay", "classical_rtt", "handshake_rounds",
                "reconciliation_time"});
  LatencyParams p;
  if (j.contains("hops")) p.hops = j.at("hops").get<int>();
  if (j.contains("per_hop_delay")) p.per_hop_delay = get_number(j, "per_hop_delay");
  if (j.contains("classical_rtt")) p.classical_rtt = get_number(j, "classical_rtt");
  if (j.contains("handshake_rounds"))
    p.handshake_rounds = j.at("handshake_rounds").get<int>();
  if (j.contains("reconciliation_time"))
    p.reconciliation_time = get_number(j, "reconciliation_time");
  return p;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_keys(j, "config",
               {"topology", "trials", "seed", "degradation_sweep", "herald_loss",
                "blend_beta", "message_kind", "coherence", "bob_delay_us",
                "hop_depolarizing", "latency"});

  ExperimentConfig cfg;
  try {
    if (j.contains("coherence")) {
      const json& c = j.at("coherence");
      require_keys(c, "coherence", {"t2_us", "window_us"});
      double t2 = c.contains("t2_us") ? get_number(c, "t2_us") : 3.0;
      double window = c.contains("window_us") ? get_number(c, "window_us") : 3.0;
      cfg.coherence = CoherenceSpec(t2, window);
    }
    if (j.contains("topology")) {
      cfg.topology = parse_topology(j.at("topology"), cfg.coherence);
    }
    if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_unsigned()) {
        throw ConfigError("'seed' must be a non-negative integer");
      }
      cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("degradation_sweep")) {
      cfg.degradation_sweep = j.at("degradation_sweep").get<std::vector<double>>();
    }
    if (j.contains("herald_loss")) cfg.herald_loss = get_number(j, "herald_loss");
    if (j.contains("blend_beta")) {
      const json& b = j.at("blend_beta");
      if (b.is_string()) {
        if (b.get<std::string>() != "auto") {
          throw ConfigError("'blend_beta' must be a number or \"auto\"");
        }
        cfg.blend_beta = std::nullopt;
      } else if (b.is_number()) {
        cfg.blend_beta = b.get<double>();
      } else {
        throw ConfigError("'blend_beta' must be a number or \"auto\"");
      }
    }
    if (j.contains("message_kind")) {
      const json& m = j.at("message_kind");
      if (m.is_string()) {
        const std::string kind = m.get<std::string>();
        if (kind == "haar_random") {
          cfg.message_kind = MessageKind::haar_random;
        } else if (kind == "fixed_zero") {
          cfg.message_kind = MessageKind::fixed_basis;
          cfg.fixed_basis_bit = 0;
        } else if (kind == "fixed_one") {
          cfg.message_kind = MessageKind::fixed_basis;
          cfg.fixed_basis_bit = 1;
        } else {
          throw ConfigError("unknown message_kind '" + kind + "'");
        }
      } else if (m.is_object()) {
        require_keys(m, "message_kind", {"theta", "phi"});
        cfg.message_kind = MessageKind::fixed_bloch;
        cfg.bloch_theta = get_number(m, "theta");
        cfg.bloch_phi = get_number(m, "phi");
      } else {
        throw ConfigError("'message_kind' must be a string or {theta, phi}");
      }
    }
    if (j.contains("bob_delay_us")) cfg.bob_delay_us = get_number(j, "bob_delay_us");
    if (j.contains("hop_depolarizing"))
      cfg.hop_depolarizing = get_number(j, "hop_depolarizing");
    if (j.contains("latency")) cfg.latency = parse_latency(j.at("latency"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void validate_config(const ExperimentConfig& cfg) {
  if (!cfg.seed.has_value()) {
    throw ConfigError("seed must be set explicitly (config key or --seed)");
  }
  if (cfg.trials < 1) {
    throw ConfigError("trials must be at least 1");
  }
  if (cfg.degradation_sweep.empty()) {
    throw ConfigError("degradation sweep must be non-empty");
  }
  for (std::size_t i = 0; i < cfg.degradation_sweep.size(); ++i) {
    const double x = cfg.degradation_sweep[i];
    if (!(x >= 0.0 && x <= 1.0)) {
      throw ConfigError("sweep values must lie in [0, 1]");
    }
    if (i > 0 && x < cfg.degradation_sweep[i - 1]) {
      throw ConfigError("sweep values must be ascending");
    }
  }
  if (!(cfg.herald_loss >= 0.0 && cfg.herald_loss <= 1.0)) {
    throw ConfigError("herald_loss must lie in [0, 1]");
  }
  if (cfg.blend_beta.has_value() &&
      !(*cfg.blend_beta >= 0.0 && *cfg.blend_beta <= 1.0)) {
    throw ConfigError("blend_beta must lie in [0, 1]");
  }
  if (cfg.bob_delay_us < 0.0) {
    throw ConfigError("bob_delay_us must be non-negative");
  }
  if (!(cfg.hop_depolarizing >= 0.0 && cfg.hop_depolarizing <= 1.0)) {
    throw ConfigError("hop_depolarizing must lie in [0, 1]");
  }
}

// ---------------------------------------------------------------------------
// Trials

namespace {

MessageSpec draw_message(const ExperimentConfig& cfg, RandomStream& rng) {
  switch (cfg.message_kind) {
    case MessageKind::haar_random:
      return MessageSpec::haar(rng);
    case MessageKind::fixed_basis:
      return MessageSpec::basis(cfg.fixed_basis_bit);
    case MessageKind::fixed_bloch:
      return MessageSpec::bloch(cfg.bloch_theta, cfg.bloch_phi);
  }
  throw std::logic_error("unreachable message kind");
}

struct PreparedTrial {
  EntanglementLink link1;
  EntanglementLink link2;
  MessageSpec msg;
  EncodedPayload payload;  // after all hops
};

// Shared front half of authorized and adversary trials: key distribution,
// aging, encoding, and every relay hop.
std::optional<PreparedTrial> prepare_trial(const ExperimentConfig& cfg, double x,
                                           RandomStream& rng) {
  const double beta = resolve_blend_beta(cfg);
  const double x_eff = std::clamp(beta * x, 0.0, 1.0);

  const std::string& sender = cfg.topology.message_path().front();
  const std::string& receiver = cfg.topology.message_path().back();
  DistributionResult dist = distribute_pairs(cfg.topology, sender, receiver, 2,
                                             x_eff, cfg.herald_loss, 0.0, rng);
  EntanglementLink link1 = std::move(dist.links[0]);
  EntanglementLink link2 = std::move(dist.links[1]);
  if (cfg.bob_delay_us > 0.0) {
    link1 = age_link(link1, cfg.bob_delay_us, cfg.coherence);
    link2 = age_link(link2, cfg.bob_delay_us, cfg.coherence);
  }

  MessageSpec msg = draw_message(cfg, rng);
  EncodedPayload payload = encode(msg, link1, link2, 0.0, cfg.coherence);
  for (const AttenuationSpec& hop : cfg.topology.hop_attenuations()) {
    payload = relay_forward(payload, hop, cfg.hop_depolarizing, rng);
    if (payload.erased) {
      return std::nullopt;
    }
  }
  return PreparedTrial{std::move(link1), std::move(link2), std::move(msg),
                       std::move(payload)};
}

}  // namespace

TrialOutcome run_trial(const ExperimentConfig& cfg, double x, int sweep_index,
                       int trial_index) {
  RandomStream rng(derive_stream_seed(*cfg.seed, sweep_index, trial_index));
  std::optional<PreparedTrial> trial = prepare_trial(cfg, x, rng);
  TrialOutcome outcome;
  outcome.trial_index = trial_index;
  if (!trial.has_value()) {
    outcome.status = DecodeStatus::erased;
    outcome.delivered = false;
    return outcome;
  }
  DecodeResult result = decode(trial->payload, trial->link1, trial->link2,
                               trial->msg, cfg.bob_delay_us, cfg.coherence);
  outcome.status = result.status;
  outcome.fidelity_value = result.fidelity_value;
  outcome.delivered = result.status != DecodeStatus::erased;
  return outcome;
}

TrialOutcome run_adversary_trial(const ExperimentConfig& cfg,
                                 AdversaryStrategy strategy, double x,
                                 int sweep_index, int trial_index) {
  RandomStream rng(derive_stream_seed(*cfg.seed, sweep_index, trial_index));
  std::optional<PreparedTrial> trial = prepare_trial(cfg, x, rng);
  TrialOutcome outcome;
  outcome.trial_index = trial_index;
  if (!trial.has_value()) {
    outcome.status = DecodeStatus::erased;
    outcome.delivered = false;
    return outcome;
  }
  DecodeResult result = adversary_decode(trial->payload, strategy, trial->msg);
  outcome.status = result.status;
  outcome.fidelity_value = result.fidelity_value;
  outcome.delivered = true;
  if (cfg.message_kind == MessageKind::fixed_basis && result.reconstructed) {
    const MeasurementOutcome guess =
        measure_z(*result.reconstructed, message_qubit(), rng);
    outcome.guess_correct = guess.outcome == trial->msg.basis_bit();
  }
  return outcome;
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

std::vector<TrialOutcome> run_point(
    const ExperimentConfig& cfg, int threads,
    const std::function<TrialOutcome(int trial_index)>& trial_fn) {
  int workers = threads > 0
                    ? threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, cfg.trials);

  std::vector<TrialOutcome> outcomes(cfg.trials);
  if (workers == 1) {
    for (int t = 0; t < cfg.trials; ++t) {
      outcomes[t] = trial_fn(t);
    }
    return outcomes;
  }

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int t = w; t < cfg.trials; t += workers) {
        outcomes[t] = trial_fn(t);
      }
    });
  }
  for (std::thread& th : pool) {
    th.join();
  }
  return outcomes;
}

// Aggregation is a sequential reduction over the index-ordered outcomes, so
// the result does not depend on how trials were scheduled.
MetricsRecord aggregate(double x, const std::vector<TrialOutcome>& outcomes,
                        bool adversary) {
  MetricsRecord record;
  record.x = x;

  std::vector<double> fidelities;
  fidelities.reserve(outcomes.size());
  int delivered = 0;
  int guesses = 0;
  int guesses_correct = 0;
  for (const TrialOutcome& o : outcomes) {
    if (o.delivered) {
      ++delivered;
    }
    if (o.fidelity_value.has_value()) {
      fidelities.push_back(*o.fidelity_value);
    }
    if (o.guess_correct.has_value()) {
      ++guesses;
      if (*o.guess_correct) {
        ++guesses_correct;
      }
    }
  }
  record.n_delivered = delivered;
  record.delivery_rate =
      static_cast<double>(delivered) / static_cast<double>(outcomes.size());

  if (!fidelities.empty()) {
    double sum = 0.0;
    for (double f : fidelities) {
      sum += f;
    }
    const double mean = sum / static_cast<double>(fidelities.size());
    double sq = 0.0;
    for (double f : fidelities) {
      sq += (f - mean) * (f - mean);
    }
    const std::size_t n = fidelities.size();
    const double stderr_mean =
        n > 1 ? std::sqrt(sq / static_cast<double>(n - 1)) /
                    std::sqrt(static_cast<double>(n))
              : 0.0;
    if (adversary) {
      record.adversary_mean_fidelity = mean;
    } else {
      record.mean_fidelity = mean;
      record.stderr_fidelity = stderr_mean;
    }
  }
  if (guesses > 0) {
    record.adversary_guess_success =
        static_cast<double>(guesses_correct) / static_cast<double>(guesses);
  }
  return record;
}

}  // namespace

std::vector<MetricsRecord> run_sweep(const ExperimentConfig& cfg, int threads) {
  validate_config(cfg);
  std::vector<MetricsRecord> records;
  records.reserve(cfg.degradation_sweep.size());
  for (std::size_t s = 0; s < cfg.degradation_sweep.size(); ++s) {
    const double x = cfg.degradation_sweep[s];
    const int sweep_index = static_cast<int>(s);
    const auto outcomes = run_point(cfg, threads, [&](int t) {
      return run_trial(cfg, x, sweep_index, t);
    });
    records.push_back(aggregate(x, outcomes, /*adversary=*/false));
  }
  return records;
}

std::vector<MetricsRecord> run_adversary(const ExperimentConfig& cfg,
                                         AdversaryStrategy strategy,
                                         int threads) {
  validate_config(cfg);
  std::vector<MetricsRecord> records;
  records.reserve(cfg.degradation_sweep.size());
  for (std::size_t s = 0; s < cfg.degradation_sweep.size(); ++s) {
    const double x = cfg.degradation_sweep[s];
    const int sweep_index = static_cast<int>(s);
    const auto outcomes = run_point(cfg, threads, [&](int t) {
      return run_adversary_trial(cfg, strategy, x, sweep_index, t);
    });
    records.push_back(aggregate(x, outcomes, /*adversary=*/true));
  }
  return records;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string format_fixed(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

std::string format_optional(const std::optional<double>& value) {
  return value.has_value() ? format_fixed(*value) : std::string();
}

}  // namespace

void emit_csv(const std::vector<MetricsRecord>& records, std::ostream& out) {
  if (records.empty()) {
    throw std::invalid_argument("qrelay: refusing to emit an empty CSV");
  }
  out << "x,mean_fidelity,stderr_fidelity,delivery_rate,n_delivered,"
         "adversary_mean_fidelity\n";
  for (const MetricsRecord& r : records) {
    out << format_fixed(r.x) << ',' << format_optional(r.mean_fidelity) << ','
        << format_optional(r.stderr_fidelity) << ','
        << format_fixed(r.delivery_rate) << ',' << r.n_delivered << ','
        << format_optional(r.adversary_mean_fidelity) << '\n';
  }
}

void emit_csv(const std::vector<MetricsRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("qrelay: cannot write CSV to '" + path + "'");
  }
  emit_csv(records, out);
  out.flush();
  if (!out) {
    throw std::runtime_error("qrelay: failed writing CSV to '" + path + "'");
  }
}

}  // namespace qrelay
