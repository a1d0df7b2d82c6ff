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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qrelay/graph.hpp"
#include "qrelay/protocol.hpp"

namespace qrelay {

/// Abstract-time latency model. The proposed protocol pays per-hop forwarding
/// only; the baseline additionally pays handshake round trips and key
/// reconciliation. The shipped defaults are calibrated, not derived.
struct LatencyParams {
  int hops = 4;
  double per_hop_delay = 1.0;
  double classical_rtt = 1.0;
  int handshake_rounds = 2;
  double reconciliation_time = 0.3;
};

struct LatencyComparison {
  double proposed;
  double baseline;
  double reduction;  // 1 - proposed/baseline
};

LatencyComparison latency_compare(const LatencyParams& p);

struct ExperimentConfig {
  Topology topology = default_topology();
  int trials = 1000;
  std::optional<std::uint64_t> seed;  // must be set explicitly before running
  std::vector<double> degradation_sweep = {0.00, 0.05, 0.10, 0.15, 0.20,
                                           0.25, 0.30, 0.35, 0.40};
  double herald_loss = 0.0;
  std::optional<double> blend_beta;  // nullopt = auto-calibrate
  MessageKind message_kind = MessageKind::haar_random;
  int fixed_basis_bit = 0;
  double bloch_theta = 0.0;
  double bloch_phi = 0.0;
  CoherenceSpec coherence{3.0, 3.0};
  double bob_delay_us = 0.0;
  double hop_depolarizing = 0.0;
  LatencyParams latency;
};

/// Parses a strict JSON config: keys mirror the field names above in
/// snake_case, unknown keys are a hard error, and omitted keys keep their
/// defaults. Throws ConfigError on any problem.
ExperimentConfig load_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

/// Validates cross-field invariants (explicit seed, positive trials,
/// ascending sweep in [0, 1], ...). Called by the run_* entry points.
void validate_config(const ExperimentConfig& cfg);

/// Inverts the degradation anchor: finds the effective Werner parameter
/// x_eff with mean Haar fidelity anchor_fidelity, and returns
/// beta = x_eff / anchor_x. The default anchor is (0.25, 0.972).
double calibrate_blend(double anchor_x, double anchor_fidelity);

/// Mean fidelity over uniformly random messages when both key pairs carry
/// effective degradation x_eff: (1 + 2 (1 - x_eff/2)^2) / 3.
double haar_average_fidelity(double x_eff);

/// The beta actually used by a run: the configured value, or the
/// auto-calibrated default.
double resolve_blend_beta(const ExperimentConfig& cfg);

struct TrialOutcome {
  DecodeStatus status = DecodeStatus::erased;
  std::optional<double> fidelity_value;
  bool delivered = false;
  int trial_index = 0;
  std::optional<bool> guess_correct;  // adversary bit-guess, fixed_basis only
};

struct MetricsRecord {
  double x = 0.0;
  std::optional<double> mean_fidelity;
  std::optional<double> stderr_fidelity;
  double delivery_rate = 0.0;
  int n_delivered = 0;
  std::optional<double> adversary_mean_fidelity;
  // Reported alongside, but not part of the CSV schema.
  std::optional<double> adversary_guess_success;
};

/// One end-to-end trial: distribute two keyed pairs at degradation beta*x,
/// age them by bob_delay, encode, forward across every hop, decode. Fully
/// determined by (seed, sweep_index, trial_index).
TrialOutcome run_trial(const ExperimentConfig& cfg, double x, int sweep_index,
                       int trial_index);

/// Same pipeline, but the terminal step is an interception instead of the
/// receiver's decode.
TrialOutcome run_adversary_trial(const ExperimentConfig& cfg,
                                 AdversaryStrategy strategy, double x,
                                 int sweep_index, int trial_index);

/// Runs cfg.trials trials per sweep point across `threads` workers
/// (0 = hardware concurrency). Output is bit-identical for identical
/// (config, seed) regardless of the worker count.
std::vector<MetricsRecord> run_sweep(const ExperimentConfig& cfg, int threads = 0);

std::vector<MetricsRecord> run_adversary(const ExperimentConfig& cfg,
                                         AdversaryStrategy strategy,
                                         int threads = 0);

/// CSV with header
///   x,mean_fidelity,stderr_fidelity,delivery_rate,n_delivered,adversary_mean_fidelity
/// six fractional digits, LF line endings, empty fields for absent optionals.
void emit_csv(const std::vector<MetricsRecord>& records, std::ostream& out);
void emit_csv(const std::vector<MetricsRecord>& records, const std::string& path);

}  // namespace qrelay
