// Copyright 2026 The foelab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FOELAB_EXPERIMENT_HPP_
#define FOELAB_EXPERIMENT_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "foelab/analysis.hpp"
#include "foelab/environment.hpp"
#include "foelab/expert_pool.hpp"
#include "foelab/foe.hpp"
#include "foelab/reactive.hpp"
#include "foelab/schedules.hpp"

#include "json.hpp"

namespace foelab {

inline constexpr const char* kVersion = "0.1.0";

enum class RunMode { kFoe, kTildeFoe };

struct PriorSpec {
  std::string kind = "uniform";    // uniform | program | weights
  std::vector<int> code_lengths;   // program; empty = registry lengths
  std::vector<double> weights;     // weights
};

// One experiment, as read from a single JSON document.
//
//   {
//     "name": "pd-titfortat",
//     "mode": "tilde_foe",                    // or "foe"
//     "horizon": 200000,                      // T, or basic horizon in tilde_foe
//     "seeds": [1, 2, 3],
//     "output_dir": "foe_out",
//     "environment": {"kind": "pd_tit_for_tat",
//                     "matrix": {"cc": 0.2, "cd": 1.0, "dc": 0.0, "dd": 0.8}},
//     "experts": ["always_cooperate", "always_defect"],
//     "prior": {"kind": "uniform"},
//     "schedule": {"exploration_exponent": "1/4", "learning_exponent": "3/4",
//                  "entering_exponent": 16,
//                  "loss_bound": {"regime": "power", "exponent": "1/16", "floor": true},
//                  "confidence_exponent": "2"}
//   }
//
// Environment kinds: oblivious_table {table}, bernoulli {means},
// phased_adversary {experts}, constant {experts, loss} at the master scale;
// pd_tit_for_tat {matrix}, chicken {threshold, matrix}, heaven_hell,
// heaven_hell_variant at the basic scale. Matrix keys name the learner's
// move first.
struct ExperimentConfig {
  std::string name = "experiment";
  RunMode mode = RunMode::kFoe;
  Time horizon = 1;
  std::vector<std::uint64_t> seeds{1};
  std::string output_dir = "foe_out";
  nlohmann::json environment = nlohmann::json::object();
  std::vector<std::string> experts;  // strategy names, basic-scale only
  PriorSpec prior;
  ScheduleConfig schedule;

  // Accepts either a config document or a manifest (uses its "config").
  // Throws ConfigError.
  static ExperimentConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
  // Throws ConfigError.
  void validate() const;

  bool basic_scale() const;
  std::size_t num_experts() const;
  // Effective schedule (tilde_foe always floors B_t).
  Schedules schedules() const;
};

// Parses a "schedule" object. Throws ConfigError.
ScheduleConfig schedule_from_json(const nlohmann::json& j);

std::vector<ExperimentConfig> builtin_scenarios();
// Throws ConfigError for unknown names.
ExperimentConfig find_scenario(const std::string& name);

// A single seeded run, before any file output.
struct SeedRun {
  std::uint64_t seed = 0;
  std::vector<std::string> expert_names;  // indexed by pool id
  Trajectory master;
  std::optional<BasicTrajectory> basic;
  bool matrix_game = false;  // actions are cooperate/defect
  bool audit_ok = false;
};

// Builds pool and environment from the config and runs one seed.
SeedRun run_seed(const ExperimentConfig& config, std::uint64_t seed);
// The pool the config describes, in pool-id order.
ExpertPool build_pool(const ExperimentConfig& config, std::vector<std::string>* names = nullptr);

struct SeedSummary {
  std::uint64_t seed = 0;
  Time master_steps = 0;
  Time basic_steps = 0;
  double foe_loss = 0.0;
  ExpertId best_expert = 0;
  double regret_vs_best = 0.0;
  double per_round_regret = 0.0;
  // Mean loss per basic step (per master step at the master scale) over the
  // final 10% of the horizon.
  double final_tenth_mean_loss = 0.0;
  // Fraction of action 0 (defect) over the final 10%; matrix games only.
  std::optional<double> final_tenth_defect_rate;
  std::size_t explorations = 0;
  bool audit_ok = false;
  std::vector<HannanPoint> hannan;
};

SeedSummary summarize(const SeedRun& run);

// File formats. Floats are written with 17 significant digits.
std::string trajectory_jsonl(const SeedRun& run);
std::string summary_csv(const SeedRun& run);
std::string aggregate_csv(const std::vector<SeedSummary>& seeds);

struct RunOptions {
  bool summary_only = false;  // skip per-seed JSONL and CSV
  unsigned max_workers = 0;   // 0 = hardware concurrency
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<SeedSummary> seeds;
  std::vector<std::string> files;
  std::string config_hash;

  std::string summary_text() const;
};

// Runs all seeds on a bounded worker set and writes outputs atomically
// (temporary file + rename) under config.output_dir.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

// Hex FNV-1a of the canonical config dump.
std::string config_hash(const ExperimentConfig& config);

}  // namespace foelab

#endif  // FOELAB_EXPERIMENT_HPP_
