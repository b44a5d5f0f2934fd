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

#ifndef FOELAB_GAMES_HPP_
#define FOELAB_GAMES_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace foelab {

using Action = int;

// Matrix games use index 0 for defect and 1 for cooperate. Heaven-hell uses
// 0 for pray and 1 for curse.
inline constexpr Action kDefect = 0;
inline constexpr Action kCooperate = 1;
inline constexpr Action kPray = 0;
inline constexpr Action kCurse = 1;

// The shared basic-scale interaction record. observed[k] is what the
// learner saw after its k-th move: the opponent's move in matrix games, the
// heaven (0) / hell (1) state in heaven-hell.
struct GameHistory {
  std::vector<Action> ours;
  std::vector<Action> observed;

  std::size_t size() const { return ours.size(); }
  void push(Action a, Action obs) {
    ours.push_back(a);
    observed.push_back(obs);
  }
  void truncate(std::size_t n) {
    ours.resize(n);
    observed.resize(n);
  }
};

// An expert at the basic time scale. Strategies are deterministic functions
// of the actual shared history.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual Action act(const GameHistory& history) const = 0;
  virtual std::string name() const = 0;
};

std::shared_ptr<const Strategy> constant_strategy(Action action, std::string name = "");
// C first, then our opponent's previous move.
std::shared_ptr<const Strategy> tit_for_tat_strategy();
// Cooperate, defect, cooperate, ... by basic time parity.
std::shared_ptr<const Strategy> alternating_strategy();
// Win-stay, lose-shift, starting with cooperation.
std::shared_ptr<const Strategy> pavlov_strategy();

struct StrategyInfo {
  std::string name;
  int code_length;  // declared program length in bits; prior weight 2^-length
  std::shared_ptr<const Strategy> strategy;
};

// Hand-written computable strategies standing in for a program enumeration.
// Code lengths satisfy Kraft's inequality over the whole registry.
const std::vector<StrategyInfo>& strategy_registry();
// Throws ConfigError for unknown names.
const StrategyInfo& find_strategy(const std::string& name);

struct BasicOutcome {
  Action observation = 0;
  double loss = 0.0;
};

// A repeated game at the basic time scale. Clones must be cheap: state is a
// handful of integers, never the history.
class RepeatedGame {
 public:
  virtual ~RepeatedGame() = default;
  virtual std::unique_ptr<RepeatedGame> clone() const = 0;
  virtual std::string kind() const = 0;
  // Plays one basic step and returns the learner's loss in [0, 1].
  virtual BasicOutcome play(Action ours) = 0;
  // Basic steps played so far.
  std::int64_t basic_time() const { return basic_time_; }

 protected:
  std::int64_t basic_time_ = 0;
};

// Learner loss indexed [learner action][opponent action].
using LossMatrix = std::array<std::array<double, 2>, 2>;

// Prisoner's dilemma losses C/C = 0.2, C/D = 1.0, D/C = 0.0, D/D = 0.8
// (learner move first).
LossMatrix default_pd_matrix();
// Chicken losses ((1, 0), (0.8, 0.5)) with rows = learner move, first index
// defect.
LossMatrix default_chicken_matrix();

// Throws InvalidArgument unless defecting is dominant, mutual cooperation
// beats mutual defection, and all entries lie in [0, 1].
void validate_pd_matrix(const LossMatrix& m);

std::unique_ptr<RepeatedGame> make_pd_tit_for_tat(const LossMatrix& pd_matrix);
// Opponent defects by default and cooperates while the learner's current run
// of consecutive defections is at least `primitive_threshold`.
std::unique_ptr<RepeatedGame> make_chicken(std::int64_t primitive_threshold,
                                           const LossMatrix& matrix = default_chicken_matrix());
// Heaven until the first curse, hell (loss 1 per step) forever after.
std::unique_ptr<RepeatedGame> make_heaven_hell();
// As heaven-hell, but a streak of consecutive prayers started in hell at
// basic time s returns the learner to heaven once it reaches length s.
std::unique_ptr<RepeatedGame> make_heaven_hell_variant();

}  // namespace foelab

#endif  // FOELAB_GAMES_HPP_
