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

#include "foelab/reactive.hpp"

#include <algorithm>

#include "foelab/errors.hpp"

namespace foelab {

BlockEnvironment::BlockEnvironment(std::unique_ptr<RepeatedGame> game,
                                   std::vector<std::shared_ptr<const Strategy>> strategies,
                                   Schedules schedules, Time basic_horizon)
    : game_(std::move(game)),
      strategies_(std::move(strategies)),
      schedules_(std::move(schedules)),
      basic_horizon_(basic_horizon) {
  if (!game_) throw InvalidArgument("block environment needs a game");
  if (strategies_.empty()) throw InvalidArgument("block environment needs at least one strategy");
  for (const auto& s : strategies_) {
    if (!s) throw InvalidArgument("null strategy");
  }
  if (basic_horizon_ < 1) throw InvalidArgument("basic horizon must be >= 1");
}

double BlockEnvironment::loss_bound(Time t) const {
  return static_cast<double>(schedules_.block_length(t));
}

void BlockEnvironment::compute_losses(Time t, std::span<double> out) {
  if (finished()) {
    throw ContractViolation("block environment: basic horizon already exhausted");
  }
  current_master_t_ = t;
  current_block_ = std::min<std::int64_t>(schedules_.block_length(t),
                                          basic_horizon_ - basic_played());
  const std::size_t base = history_.size();
  for (std::size_t i = 0; i < strategies_.size(); ++i) {
    auto sandbox = game_->clone();
    double total = 0.0;
    for (std::int64_t k = 0; k < current_block_; ++k) {
      const Action a = strategies_[i]->act(history_);
      const BasicOutcome outcome = sandbox->play(a);
      if (!(outcome.loss >= 0.0 && outcome.loss <= 1.0)) {
        history_.truncate(base);
        throw ContractViolation("basic loss outside [0, 1]");
      }
      history_.push(a, outcome.observation);
      total += outcome.loss;
    }
    history_.truncate(base);
    out[i] = total;
  }
}

void BlockEnvironment::on_played(ExpertId expert) {
  const Time start = basic_played() + 1;
  block_starts_.push_back(start);
  block_lengths_.push_back(current_block_);
  double total = 0.0;
  for (std::int64_t k = 0; k < current_block_; ++k) {
    const Action a = strategies_[expert]->act(history_);
    const BasicOutcome outcome = game_->play(a);
    history_.push(a, outcome.observation);
    total += outcome.loss;
    basic_steps_.push_back({start + k, current_master_t_, expert, a, outcome.observation,
                            outcome.loss});
  }
  if (total != hidden_losses()[expert]) {
    throw ContractViolation("block environment: game replay diverged from its clone");
  }
}

BasicTrajectory run_tilde_foe(ExpertPool pool, BlockEnvironment& env,
                              const Schedules& schedules, std::uint64_t seed) {
  pool.reset();
  FoeMaster master(std::move(pool), schedules, seed);
  BasicTrajectory out;
  out.master = Trajectory(env.num_experts(), seed);
  while (!env.finished()) {
    const StepRecord record = master.step(env);
    out.master.append(record, env.hidden_losses());
  }
  out.basic_steps = env.basic_steps();
  out.block_starts = env.block_starts();
  out.block_lengths = env.block_lengths();
  out.bandit_audit_ok = env.one_reveal_per_step();
  return out;
}

}  // namespace foelab
