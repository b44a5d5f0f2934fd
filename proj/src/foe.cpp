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

#include "foelab/foe.hpp"

#include <algorithm>
#include <cmath>

#include "foelab/errors.hpp"
#include "foelab/selectors.hpp"

namespace foelab {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

void Trajectory::append(const StepRecord& record, std::span<const double> expert_losses) {
  if (expert_losses.size() != num_experts_) {
    throw InvalidArgument("trajectory: loss vector width does not match expert count");
  }
  if (expert_sums_.size() != num_experts_) expert_sums_.assign(num_experts_, {});
  steps_.push_back(record);
  foe_sum_.add(record.true_loss);
  foe_cum_.push_back(foe_sum_.value());
  for (std::size_t i = 0; i < num_experts_; ++i) {
    expert_sums_[i].add(expert_losses[i]);
    expert_cum_.push_back(expert_sums_[i].value());
    expert_step_.push_back(expert_losses[i]);
  }
}

double Trajectory::foe_loss(Time T) const {
  if (T < 1 || T > length()) throw InvalidArgument("trajectory: step out of range");
  return foe_cum_[static_cast<std::size_t>(T - 1)];
}

double Trajectory::expert_loss(ExpertId i, Time T) const {
  if (i >= num_experts_) throw InvalidArgument("trajectory: unknown expert " + std::to_string(i));
  if (T < 1 || T > length()) throw InvalidArgument("trajectory: step out of range");
  return expert_cum_[static_cast<std::size_t>(T - 1) * num_experts_ + i];
}

double Trajectory::expert_loss(ExpertId i) const {
  if (i >= num_experts_) throw InvalidArgument("trajectory: unknown expert " + std::to_string(i));
  return steps_.empty() ? 0.0 : expert_loss(i, length());
}

double Trajectory::expert_step_loss(ExpertId i, Time t) const {
  if (i >= num_experts_) throw InvalidArgument("trajectory: unknown expert " + std::to_string(i));
  if (t < 1 || t > length()) throw InvalidArgument("trajectory: step out of range");
  return expert_step_[static_cast<std::size_t>(t - 1) * num_experts_ + i];
}

ExpertId sample_prior(const std::vector<double>& prior, double u) {
  double cdf = 0.0;
  ExpertId last_positive = prior.size();
  for (ExpertId i = 0; i < prior.size(); ++i) {
    if (prior[i] == 0.0) continue;
    last_positive = i;
    cdf += prior[i];
    if (u < cdf) return i;
  }
  if (last_positive == prior.size()) throw PoolError("sample_prior: prior has no support");
  // u may land above a cdf that rounds to slightly less than 1.
  return last_positive;
}

StepDecision foe_decide(const ExpertPool& pool, Time t, double exploration_rate,
                        double learning_rate, RunStreams& streams) {
  StepDecision decision;
  decision.explored = streams.foe.uniform() < exploration_rate;
  if (!decision.explored) {
    const PerturbationDraw draw = draw_perturbations(pool, t, streams.fpl);
    decision.chosen = fpl_select(pool, t, learning_rate, draw);
    return decision;
  }
  const std::vector<double> prior = pool.finitized_prior(t);
  decision.chosen = sample_prior(prior, streams.foe.uniform());
  decision.prior_probability = prior[decision.chosen];
  return decision;
}

double foe_estimate(const StepDecision& decision, double true_loss, double exploration_rate,
                    double b_hat) {
  if (!decision.explored) return 0.0;
  const double est = true_loss / (decision.prior_probability * exploration_rate);
  return std::min(est, b_hat);
}

FoeMaster::FoeMaster(ExpertPool pool, Schedules schedules, std::uint64_t seed)
    : pool_(std::move(pool)), schedules_(std::move(schedules)), streams_(seed) {}

StepRecord FoeMaster::step(Environment& env) {
  if (env.num_experts() != pool_.size()) {
    throw InvalidArgument("environment and pool disagree on the number of experts");
  }
  const Time t = pool_.advance_clock();
  env.assign_losses(t);

  const double bound = env.loss_bound(t);
  const double gamma = schedules_.exploration_rate(t);
  const double eta = schedules_.learning_rate(t);
  const double b_hat = estimated_loss_bound(bound, gamma, pool_.min_active_weight(t));

  pool_.backfill_inactive(t, b_hat);
  const StepDecision decision = foe_decide(pool_, t, gamma, eta, streams_);

  const double loss = env.reveal(decision.chosen);
  if (!(loss >= 0.0 && loss <= bound)) {
    throw ContractViolation("revealed loss " + std::to_string(loss) + " outside [0, B_t] at t = " +
                            std::to_string(t));
  }
  const double est = foe_estimate(decision, loss, gamma, b_hat);
  if (decision.explored) pool_.record_estimated_loss(decision.chosen, t, est);

  StepRecord record;
  record.t = t;
  record.explored = decision.explored;
  record.chosen = decision.chosen;
  record.true_loss = loss;
  record.est_loss_assigned = est;
  record.active_count = pool_.active_count(t);
  record.b_hat = b_hat;
  record.loss_bound = bound;
  return record;
}

Trajectory run_foe(ExpertPool pool, Environment& env, Time horizon,
                   const Schedules& schedules, std::uint64_t seed) {
  if (horizon < 1) throw InvalidArgument("run: horizon must be >= 1");
  pool.reset();
  FoeMaster master(std::move(pool), schedules, seed);
  Trajectory trajectory(env.num_experts(), seed);
  for (Time t = 1; t <= horizon; ++t) {
    const StepRecord record = master.step(env);
    trajectory.append(record, env.hidden_losses());
  }
  return trajectory;
}

}  // namespace foelab
