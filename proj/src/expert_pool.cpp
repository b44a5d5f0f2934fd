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

#include "foelab/expert_pool.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "foelab/errors.hpp"

namespace foelab {
namespace {

constexpr double kWeightSumTolerance = 1e-9;

std::string default_name(std::size_t i) { return "expert" + std::to_string(i); }

// Builds experts in nonincreasing weight order; ties keep input order.
std::vector<Expert> make_experts(std::span<const double> weights,
                                 std::span<const double> complexities,
                                 const Schedules& schedules,
                                 std::span<const std::string> names) {
  if (weights.empty()) throw InvalidArgument("expert pool needs at least one expert");
  if (!names.empty() && names.size() != weights.size()) {
    throw InvalidArgument("expert names must match the number of weights");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || w > 1.0) {
      throw InvalidArgument("prior weights must lie in (0, 1]");
    }
    sum += w;
  }
  if (sum > 1.0 + kWeightSumTolerance) {
    throw InvalidArgument("prior weights sum to " + std::to_string(sum) + " > 1");
  }

  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  const double w_max = weights[order.front()];

  std::vector<Expert> experts;
  experts.reserve(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t src = order[pos];
    Expert e;
    e.id = pos;
    e.name = names.empty() ? default_name(src) : names[src];
    e.weight = weights[src];
    e.complexity = complexities[src];
    e.entering_time = schedules.entering_time(e.weight, w_max);
    e.source_index = src;
    experts.push_back(std::move(e));
  }
  return experts;
}

}  // namespace

ExpertPool::ExpertPool(std::vector<Expert> experts)
    : experts_(std::move(experts)), cum_est_loss_(experts_.size(), 0.0) {
  for (const Expert& e : experts_) max_weight_ = std::max(max_weight_, e.weight);
}

ExpertPool ExpertPool::uniform(std::size_t n, const Schedules& schedules) {
  if (n == 0) throw InvalidArgument("uniform prior needs n >= 1");
  const double w = 1.0 / static_cast<double>(n);
  std::vector<double> weights(n, w);
  std::vector<double> complexities(n, -std::log(w));
  return ExpertPool(make_experts(weights, complexities, schedules, {}));
}

ExpertPool ExpertPool::from_code_lengths(std::span<const int> code_lengths,
                                         const Schedules& schedules,
                                         std::span<const std::string> names) {
  if (code_lengths.empty()) throw InvalidArgument("program prior needs at least one program");
  std::vector<double> weights;
  std::vector<double> complexities;
  double kraft = 0.0;
  for (int len : code_lengths) {
    if (len < 1 || len > 1000) {
      throw InvalidArgument("code lengths must lie in [1, 1000]");
    }
    const double w = std::ldexp(1.0, -len);
    kraft += w;
    weights.push_back(w);
    complexities.push_back(static_cast<double>(len) * std::log(2.0));
  }
  if (kraft > 1.0 + kWeightSumTolerance) {
    throw InvalidArgument("code lengths violate Kraft's inequality: sum 2^-len = " +
                          std::to_string(kraft));
  }
  return ExpertPool(make_experts(weights, complexities, schedules, names));
}

ExpertPool ExpertPool::from_weights(std::span<const double> weights,
                                    const Schedules& schedules,
                                    std::span<const std::string> names) {
  std::vector<double> complexities;
  complexities.reserve(weights.size());
  for (double w : weights) complexities.push_back(w > 0.0 ? -std::log(w) : 0.0);
  return ExpertPool(make_experts(weights, complexities, schedules, names));
}

std::size_t ExpertPool::active_count(Time t) const {
  return static_cast<std::size_t>(std::count_if(
      experts_.begin(), experts_.end(),
      [t](const Expert& e) { return t >= e.entering_time; }));
}

double ExpertPool::min_active_weight(Time t) const {
  double min_w = 0.0;
  for (const Expert& e : experts_) {
    if (t >= e.entering_time && (min_w == 0.0 || e.weight < min_w)) min_w = e.weight;
  }
  if (min_w == 0.0) {
    throw PoolError("no expert is active at t = " + std::to_string(t));
  }
  return min_w;
}

std::vector<double> ExpertPool::finitized_prior(Time t) const {
  std::vector<double> prior(experts_.size(), 0.0);
  double total = 0.0;
  for (const Expert& e : experts_) {
    if (t >= e.entering_time) total += e.weight;
  }
  if (total == 0.0) {
    throw PoolError("finitized prior: no expert is active at t = " + std::to_string(t));
  }
  for (const Expert& e : experts_) {
    if (t >= e.entering_time) prior[e.id] = e.weight / total;
  }
  return prior;
}

void ExpertPool::backfill_inactive(Time t, double b_hat) {
  for (const Expert& e : experts_) {
    if (t < e.entering_time) cum_est_loss_[e.id] += b_hat;
  }
}

void ExpertPool::record_estimated_loss(ExpertId i, Time t, double value) {
  if (!(value >= 0.0)) {
    throw InvalidArgument("estimated losses must be nonnegative");
  }
  if (!is_active(i, t)) {
    throw PoolError("expert " + std::to_string(i) + " is not active at t = " +
                    std::to_string(t));
  }
  cum_est_loss_[i] += value;
}

void ExpertPool::reset() {
  std::fill(cum_est_loss_.begin(), cum_est_loss_.end(), 0.0);
  clock_ = 0;
}

}  // namespace foelab
