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

#ifndef FOELAB_FOE_HPP_
#define FOELAB_FOE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "foelab/environment.hpp"
#include "foelab/expert_pool.hpp"
#include "foelab/random.hpp"
#include "foelab/schedules.hpp"

namespace foelab {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

struct StepRecord {
  Time t = 0;
  bool explored = false;            // r_t
  ExpertId chosen = 0;              // expert played
  double true_loss = 0.0;           // revealed loss of the played expert
  double est_loss_assigned = 0.0;   // estimate charged to `chosen`; 0 when exploiting
  std::size_t active_count = 0;
  double b_hat = 0.0;               // maximal estimate at t
  double loss_bound = 0.0;          // B_t declared by the environment
};

// Master-scale record of one run, plus the environment's hidden per-expert
// losses on the realized play, used only for regret evaluation.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::size_t num_experts, std::uint64_t seed)
      : num_experts_(num_experts), seed_(seed) {}

  void append(const StepRecord& record, std::span<const double> expert_losses);

  std::size_t num_experts() const { return num_experts_; }
  std::uint64_t seed() const { return seed_; }
  Time length() const { return static_cast<Time>(steps_.size()); }
  const std::vector<StepRecord>& steps() const { return steps_; }

  // Cumulative losses through step T (1 <= T <= length()).
  double foe_loss(Time T) const;
  double expert_loss(ExpertId i, Time T) const;
  double foe_loss() const { return steps_.empty() ? 0.0 : foe_loss(length()); }
  double expert_loss(ExpertId i) const;
  // Hidden loss of expert i at step t.
  double expert_step_loss(ExpertId i, Time t) const;

 private:
  std::size_t num_experts_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<StepRecord> steps_;
  std::vector<double> foe_cum_;
  std::vector<double> expert_cum_;   // row-major [t-1][i]
  std::vector<double> expert_step_;  // row-major [t-1][i]
  CompensatedSum foe_sum_;
  std::vector<CompensatedSum> expert_sums_;
};

// The random part of one master step.
struct StepDecision {
  bool explored = false;
  ExpertId chosen = 0;
  // Finitized prior mass of `chosen`; only meaningful when explored.
  double prior_probability = 0.0;
};

// Inverse-CDF draw from a finitized prior; u uniform on [0, 1).
ExpertId sample_prior(const std::vector<double>& prior, double u);

// Draws r_t from streams.foe; exploits via FPL with fresh perturbations
// from streams.fpl, or explores by sampling the finitized prior from
// streams.foe.
StepDecision foe_decide(const ExpertPool& pool, Time t, double exploration_rate,
                        double learning_rate, RunStreams& streams);

// l / (u * gamma) on exploration, 0 otherwise; capped at b_hat so rounding
// can never push an estimate past its supremum.
double foe_estimate(const StepDecision& decision, double true_loss, double exploration_rate,
                    double b_hat);

// The Follow-or-Explore master. Owns the pool and the run's random streams.
class FoeMaster {
 public:
  FoeMaster(ExpertPool pool, Schedules schedules, std::uint64_t seed);

  // One master step against `env`: assign losses, backfill inactive experts
  // with B^_t, explore or exploit, reveal the played expert's loss only,
  // charge the estimate.
  StepRecord step(Environment& env);

  const ExpertPool& pool() const { return pool_; }
  const Schedules& schedules() const { return schedules_; }
  RunStreams& streams() { return streams_; }
  Time clock() const { return pool_.clock(); }

 private:
  ExpertPool pool_;
  Schedules schedules_;
  RunStreams streams_;
};

// T sequential steps from a fresh pool state.
Trajectory run_foe(ExpertPool pool, Environment& env, Time horizon,
                   const Schedules& schedules, std::uint64_t seed);

}  // namespace foelab

#endif  // FOELAB_FOE_HPP_
