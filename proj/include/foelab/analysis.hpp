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

#ifndef FOELAB_ANALYSIS_HPP_
#define FOELAB_ANALYSIS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "foelab/expert_pool.hpp"
#include "foelab/foe.hpp"
#include "foelab/schedules.hpp"

#include "json.hpp"

namespace foelab {

// l^FoE_{1:T} - l^i_{1:T}; T defaults to the whole trajectory. Negative
// values are legitimate.
double regret(const Trajectory& trajectory, ExpertId i);
double regret(const Trajectory& trajectory, ExpertId i, Time T);
// Expert with the smallest cumulative loss through T (lowest id on ties).
ExpertId best_expert(const Trajectory& trajectory, Time T);
// (l^FoE_{1:T} - min_i l^i_{1:T}) / T.
double per_round_regret(const Trajectory& trajectory, Time T);

enum class BoundVariant { kHighProbability, kExpectation };

// Term-by-term evaluation of the FoE regret bound against expert i.
struct BoundReport {
  Time horizon = 0;
  ExpertId expert = 0;
  BoundVariant variant = BoundVariant::kExpectation;
  double delta = 0.0;

  double complexity_term = 0.0;   // (k^i + 1) / eta_T
  double preentry_term = 0.0;     // sum_{t < tau^i} B^_t
  double drift_term = 0.0;        // sum gamma_t eta_t B^_t^2
  double exploration_term = 0.0;  // sum gamma_t B_t
  double estimated_radical = 0.0; // sqrt(2 ln(4/delta) * sum B^_t)
  double true_radical = 0.0;      // sqrt(2 ln(4/delta) * sum B_t^2)
  double tail_term = 0.0;         // (delta / 2) * sum B^_t

  double sum_b_hat = 0.0;
  double sum_b_squared = 0.0;
  // High probability: first four terms + both radicals.
  // Expectation: first four terms + estimated radical + tail.
  double total = 0.0;
};

// Evaluates each term by direct summation over t = 1..T using the B^_t
// sequence realized by the pool's activation schedule. delta defaults to
// schedules.confidence(T).
BoundReport regret_bound(Time T, ExpertId i, const Schedules& schedules,
                           const ExpertPool& pool, BoundVariant variant,
                           std::optional<double> delta = std::nullopt);

// Per-expert outcome of replaying one FoE step many times.
struct EstimateCheck {
  ExpertId expert = 0;
  double true_loss = 0.0;
  // Mean assigned estimate; expected value l^i (unbiasedness).
  double mean_estimate = 0.0, se_estimate = 0.0, expected_estimate = 0.0;
  // Frequency of receiving the exploration charge; expected gamma * u^i.
  double charge_frequency = 0.0, se_charge = 0.0, expected_charge = 0.0;
  // Mean of l^_t^i * 1{FPL picks i}; expected f^i * l^i.
  double fpl_charged_mean = 0.0, se_fpl_charged = 0.0, expected_fpl_charged = 0.0;
  bool pass = false;
};

struct UnbiasednessReport {
  Time t = 0;
  std::size_t samples = 0;
  double exploration_rate = 0.0;
  double b_hat = 0.0;
  std::vector<double> fpl_distribution;  // empirical f^i
  std::vector<EstimateCheck> experts;    // active experts only
  bool pass = false;
};

// Replays step t of FoE `samples` times (>= 1e5) against the fixed loss
// vector `losses` with fresh randomness, and compares each active expert's
// empirical estimate statistics with the exhaustive case analysis over
// (r_t, u_t). Each comparison passes within 3 standard errors.
UnbiasednessReport unbiasedness_validator(const ExpertPool& pool, Time t,
                                          double exploration_rate, double learning_rate,
                                          std::span<const double> losses, double loss_bound,
                                          std::size_t samples, std::uint64_t seed);
UnbiasednessReport unbiasedness_validator(const ExpertPool& pool, const Schedules& schedules,
                                          Time t, std::span<const double> losses,
                                          double loss_bound, std::size_t samples,
                                          std::uint64_t seed);

struct ExplorationReport {
  Time t = 0;
  std::size_t trials = 0;
  double expected_rate = 0.0;
  double observed_rate = 0.0;
  double sigma = 0.0;  // binomial standard error at the expected rate
  bool pass = false;
};

// Empirical frequency of r_t = 1 over independent replays of step t.
ExplorationReport exploration_mixture_check(const ExpertPool& pool, const Schedules& schedules,
                                            Time t, std::size_t trials, std::uint64_t seed);

struct FplGapReport {
  Time t = 0;
  std::size_t samples = 0;
  double learning_rate = 0.0;
  double b_hat = 0.0;
  double factor = 0.0;  // e^(eta_t * B^_t)
  double mean_fpl = 0.0;
  double mean_ifpl = 0.0;
  // Paired difference l^_FPL - factor * l^_IFPL.
  double gap_mean = 0.0, gap_se = 0.0;
  double disagreement = 0.0, disagreement_se = 0.0;
  double disagreement_bound = 0.0;  // 1 - e^(-eta_t * B^_t)
  bool gap_pass = false;
  bool disagreement_pass = false;
};

// Monte-Carlo comparison of FPL with its infeasible twin on one step.
// Both selectors see the same perturbations and the same FoE estimate
// vector in each sample.
FplGapReport fpl_ifpl_gap_check(const ExpertPool& pool, const Schedules& schedules, Time t,
                                std::span<const double> losses, double loss_bound,
                                std::size_t samples, std::uint64_t seed);

struct EnvelopeReport {
  std::size_t runs = 0;
  double delta = 0.0;
  double envelope = 0.0;        // sqrt(2 ln(4/delta) sum B_t^2)
  double ensemble_mean = 0.0;   // proxy for sum_t E_t l^FoE_t
  std::size_t violations = 0;
  double violation_fraction = 0.0;
  double allowed_fraction = 0.0;  // delta/2 + 3 binomial sigma
  bool pass = false;
};

// Azuma-style envelope on an ensemble of identically configured runs.
EnvelopeReport martingale_envelope_check(std::span<const Trajectory> ensemble, double delta);

struct HannanPoint {
  Time T = 0;
  double per_round_regret = 0.0;
};

// 1, 2, 5, 10, 20, 50, ... up to T, plus T itself.
std::vector<Time> log_checkpoints(Time T);
std::vector<HannanPoint> hannan_series(const Trajectory& trajectory);

nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const UnbiasednessReport& r);
nlohmann::json to_json(const ExplorationReport& r);
nlohmann::json to_json(const FplGapReport& r);
nlohmann::json to_json(const EnvelopeReport& r);
nlohmann::json to_json(const std::vector<HannanPoint>& series);

std::string to_text(const BoundReport& r);

}  // namespace foelab

#endif  // FOELAB_ANALYSIS_HPP_
