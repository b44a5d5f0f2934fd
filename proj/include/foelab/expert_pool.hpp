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

#ifndef FOELAB_EXPERT_POOL_HPP_
#define FOELAB_EXPERT_POOL_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "foelab/schedules.hpp"

namespace foelab {

using ExpertId = std::size_t;

struct Expert {
  ExpertId id = 0;
  std::string name;
  double weight = 0.0;      // prior weight w, in (0, 1]
  double complexity = 0.0;  // k = -ln w
  Time entering_time = 1;   // first master step at which the expert is active
  // Position of this expert in the constructor's input, before sorting by
  // weight.
  std::size_t source_index = 0;
};

// Expert registry plus the per-expert cumulative estimated losses. A pool is
// mutated by exactly one master loop; copies are cheap snapshots.
class ExpertPool {
 public:
  // n experts of weight 1/n, all active from t = 1.
  static ExpertPool uniform(std::size_t n, const Schedules& schedules);
  // Weights 2^-len; rejects code lengths violating Kraft's inequality.
  static ExpertPool from_code_lengths(std::span<const int> code_lengths,
                                      const Schedules& schedules,
                                      std::span<const std::string> names = {});
  // Arbitrary positive weights with sum <= 1 (tolerance 1e-9).
  static ExpertPool from_weights(std::span<const double> weights,
                                 const Schedules& schedules,
                                 std::span<const std::string> names = {});

  std::size_t size() const { return experts_.size(); }
  const std::vector<Expert>& experts() const { return experts_; }
  const Expert& expert(ExpertId i) const { return experts_.at(i); }
  double max_weight() const { return max_weight_; }

  bool is_active(ExpertId i, Time t) const { return t >= experts_.at(i).entering_time; }
  std::size_t active_count(Time t) const;
  // Smallest weight among experts active at t; PoolError if none is active.
  double min_active_weight(Time t) const;

  // Prior restricted to the active set and renormalized. Entries for
  // inactive experts are exactly zero.
  std::vector<double> finitized_prior(Time t) const;

  // Charges b_hat to every expert that is not active at t.
  void backfill_inactive(Time t, double b_hat);
  // Adds a nonnegative estimate to an active expert's accumulator.
  void record_estimated_loss(ExpertId i, Time t, double value);

  // Cumulative estimated losses l^_{<t} for all experts.
  const std::vector<double>& cumulative_estimated_losses() const { return cum_est_loss_; }

  Time clock() const { return clock_; }
  Time advance_clock() { return ++clock_; }

  // Zeroes accumulators and clock.
  void reset();

 private:
  ExpertPool(std::vector<Expert> experts);

  std::vector<Expert> experts_;
  std::vector<double> cum_est_loss_;
  double max_weight_ = 0.0;
  Time clock_ = 0;
};

}  // namespace foelab

#endif  // FOELAB_EXPERT_POOL_HPP_
