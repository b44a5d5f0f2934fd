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

#ifndef FOELAB_REACTIVE_HPP_
#define FOELAB_REACTIVE_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "foelab/environment.hpp"
#include "foelab/foe.hpp"
#include "foelab/games.hpp"

namespace foelab {

struct BasicStep {
  Time basic_t = 0;   // basic time index, 1-based
  Time master_t = 0;  // master step that controls this basic step
  ExpertId expert = 0;
  Action action = 0;
  Action observation = 0;
  double loss = 0.0;
};

// Adapts a repeated game to the master time scale. At master step t the
// selected expert's strategy controls the next block_length(t) basic steps
// (fewer if the basic horizon cuts the block). The hidden loss of expert i
// is what i would accumulate over that block starting from the actual game
// state and the actual shared history; only the played expert's block
// touches the real game.
class BlockEnvironment : public Environment {
 public:
  BlockEnvironment(std::unique_ptr<RepeatedGame> game,
                   std::vector<std::shared_ptr<const Strategy>> strategies,
                   Schedules schedules, Time basic_horizon);

  std::size_t num_experts() const override { return strategies_.size(); }
  // B_t equals the nominal block length; basic losses lie in [0, 1].
  double loss_bound(Time t) const override;
  std::string kind() const override { return game_->kind(); }
  bool basic_scale() const override { return true; }

  Time basic_horizon() const { return basic_horizon_; }
  Time basic_played() const { return static_cast<Time>(history_.size()); }
  bool finished() const { return basic_played() >= basic_horizon_; }

  const GameHistory& history() const { return history_; }
  const std::vector<BasicStep>& basic_steps() const { return basic_steps_; }
  // Basic time at which each master step's block started, and its length.
  const std::vector<Time>& block_starts() const { return block_starts_; }
  const std::vector<std::int64_t>& block_lengths() const { return block_lengths_; }

 protected:
  void compute_losses(Time t, std::span<double> out) override;
  void on_played(ExpertId expert) override;

 private:
  std::unique_ptr<RepeatedGame> game_;
  std::vector<std::shared_ptr<const Strategy>> strategies_;
  Schedules schedules_;
  Time basic_horizon_;
  GameHistory history_;
  std::vector<BasicStep> basic_steps_;
  std::vector<Time> block_starts_;
  std::vector<std::int64_t> block_lengths_;
  Time current_master_t_ = 0;
  std::int64_t current_block_ = 0;
};

struct BasicTrajectory {
  std::vector<BasicStep> basic_steps;
  std::vector<Time> block_starts;
  std::vector<std::int64_t> block_lengths;
  Trajectory master;
  bool bandit_audit_ok = false;
};

// Runs FoE on the slowed master clock until the environment's basic horizon
// is exhausted. The final block is truncated at the horizon and its partial
// loss is charged to the master step that selected it.
BasicTrajectory run_tilde_foe(ExpertPool pool, BlockEnvironment& env,
                              const Schedules& schedules, std::uint64_t seed);

}  // namespace foelab

#endif  // FOELAB_REACTIVE_HPP_
