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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qrelay/errors.hpp"
#include "qrelay/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  int threads = 0;
};

qrelay::ExperimentConfig load_with_overrides(const CommonOptions& opt) {
  qrelay::ExperimentConfig cfg = qrelay::load_config_file(opt.config_path);
  if (opt.seed.has_value()) {
    cfg.seed = *opt.seed;
  }
  if (opt.trials.has_value()) {
    cfg.trials = *opt.trials;
  }
  qrelay::validate_config(cfg);
  return cfg;
}

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_out) {
  cmd->add_option("--config", opt.config_path, "experiment config (JSON)")
      ->required();
  auto* out = cmd->add_option("--out", opt.out_path, "destination CSV");
  if (needs_out) {
    out->required();
  }
  cmd->add_option("--seed", opt.seed, "override the config seed");
  cmd->add_option("--trials", opt.trials, "override the per-point trial count");
  cmd->add_option("--threads", opt.threads,
                  "worker count (0 = hardware concurrency)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator for an entanglement-keyed quantum relay "
               "network"};
  app.require_subcommand(1);

  CommonOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "run the degradation sweep and write one CSV row per point");
  add_common(sweep, sweep_opt, /*needs_out=*/true);

  CommonOptions adv_opt;
  std::string strategy_name = "trace_out";
  CLI::App* adversary = app.add_subcommand(
      "adversary", "run the interception experiment across the sweep");
  add_common(adversary, adv_opt, /*needs_out=*/true);
  adversary
      ->add_option("--strategy", strategy_name,
                   "interception strategy: trace_out or fresh_pairs")
      ->check(CLI::IsMember({"trace_out", "fresh_pairs"}))
      ->required();

  std::string latency_config;
  CLI::App* latency = app.add_subcommand(
      "latency", "print the proposed/baseline latency comparison");
  latency->add_option("--config", latency_config,
                      "experiment config (JSON); defaults apply if omitted");

  double anchor_x = 0.25;
  double anchor_f = 0.972;
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "print the blend factor for a fidelity anchor point");
  calibrate->add_option("--anchor-x", anchor_x, "anchor degradation");
  calibrate->add_option("--anchor-f", anchor_f, "anchor mean fidelity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (sweep->parsed()) {
      const qrelay::ExperimentConfig cfg = load_with_overrides(sweep_opt);
      std::cerr << "sweep: " << cfg.degradation_sweep.size() << " points x "
                << cfg.trials << " trials, beta = "
                << qrelay::resolve_blend_beta(cfg) << "\n";
      const auto records = qrelay::run_sweep(cfg, sweep_opt.threads);
      qrelay::emit_csv(records, sweep_opt.out_path);
      std::cerr << "wrote " << sweep_opt.out_path << "\n";
    } else if (adversary->parsed()) {
      const qrelay::ExperimentConfig cfg = load_with_overrides(adv_opt);
      const auto strategy = strategy_name == "trace_out"
                                ? qrelay::AdversaryStrategy::trace_out
                                : qrelay::AdversaryStrategy::fresh_pairs;
      const auto records = qrelay::run_adversary(cfg, strategy, adv_opt.threads);
      qrelay::emit_csv(records, adv_opt.out_path);
      for (const auto& r : records) {
        if (r.adversary_guess_success.has_value()) {
          std::cerr << "x=" << r.x
                    << " bit-guess success=" << *r.adversary_guess_success
                    << "\n";
        }
      }
      std::cerr << "wrote " << adv_opt.out_path << "\n";
    } else if (latency->parsed()) {
      qrelay::LatencyParams params;
      if (!latency_config.empty()) {
        params = qrelay::load_config_file(latency_config).latency;
      }
      const qrelay::LatencyComparison cmp = qrelay::latency_compare(params);
      std::cout << "proposed " << cmp.proposed << "\n"
                << "baseline " << cmp.baseline << "\n"
                << "reduction " << cmp.reduction << "\n";
    } else if (calibrate->parsed()) {
      std::cout << qrelay::calibrate_blend(anchor_x, anchor_f) << "\n";
    }
  } catch (const qrelay::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitOk;
}
