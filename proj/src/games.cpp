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

#include "foelab/games.hpp"

#include <utility>

#include "foelab/errors.hpp"

namespace foelab {
namespace {

class ConstantStrategy : public Strategy {
 public:
  ConstantStrategy(Action action, std::string name)
      : action_(action), name_(std::move(name)) {}
  Action act(const GameHistory&) const override { return action_; }
  std::string name() const override { return name_; }

 private:
  Action action_;
  std::string name_;
};

class TitForTatStrategy : public Strategy {
 public:
  Action act(const GameHistory& h) const override {
    return h.observed.empty() ? kCooperate : h.observed.back();
  }
  std::string name() const override { return "tit_for_tat"; }
};

class AlternatingStrategy : public Strategy {
 public:
  Action act(const GameHistory& h) const override {
    return h.size() % 2 == 0 ? kCooperate : kDefect;
  }
  std::string name() const override { return "alternate"; }
};

// Win-stay, lose-shift: keep the previous move after the opponent
// cooperated, switch after it defected.
class PavlovStrategy : public Strategy {
 public:
  Action act(const GameHistory& h) const override {
    if (h.ours.empty()) return kCooperate;
    const Action last = h.ours.back();
    return h.observed.back() == kCooperate ? last : 1 - last;
  }
  std::string name() const override { return "pavlov"; }
};

class MatrixGameBase : public RepeatedGame {
 public:
  explicit MatrixGameBase(const LossMatrix& m) : matrix_(m) {
    for (const auto& row : m) {
      for (double v : row) {
        if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("matrix losses must lie in [0, 1]");
      }
    }
  }

  BasicOutcome play(Action ours) override {
    if (ours != kDefect && ours != kCooperate) {
      throw ContractViolation("matrix game action must be 0 (defect) or 1 (cooperate)");
    }
    const Action theirs = opponent_move();
    observe(ours);
    ++basic_time_;
    return {theirs, matrix_[ours][theirs]};
  }

 protected:
  virtual Action opponent_move() const = 0;
  virtual void observe(Action ours) = 0;

 private:
  LossMatrix matrix_;
};

class PdTitForTat : public MatrixGameBase {
 public:
  using MatrixGameBase::MatrixGameBase;
  std::unique_ptr<RepeatedGame> clone() const override {
    return std::make_unique<PdTitForTat>(*this);
  }
  std::string kind() const override { return "pd_tit_for_tat"; }

 protected:
  Action opponent_move() const override { return last_learner_move_; }
  void observe(Action ours) override { last_learner_move_ = ours; }

 private:
  Action last_learner_move_ = kCooperate;
};

class PrimitiveChicken : public MatrixGameBase {
 public:
  PrimitiveChicken(const LossMatrix& m, std::int64_t threshold)
      : MatrixGameBase(m), threshold_(threshold) {}
  std::unique_ptr<RepeatedGame> clone() const override {
    return std::make_unique<PrimitiveChicken>(*this);
  }
  std::string kind() const override { return "chicken"; }

 protected:
  Action opponent_move() const override {
    return defect_run_ >= threshold_ ? kCooperate : kDefect;
  }
  void observe(Action ours) override { defect_run_ = ours == kDefect ? defect_run_ + 1 : 0; }

 private:
  std::int64_t threshold_;
  std::int64_t defect_run_ = 0;
};

class HeavenHell : public RepeatedGame {
 public:
  explicit HeavenHell(bool redeemable) : redeemable_(redeemable) {}
  std::unique_ptr<RepeatedGame> clone() const override {
    return std::make_unique<HeavenHell>(*this);
  }
  std::string kind() const override {
    return redeemable_ ? "heaven_hell_variant" : "heaven_hell";
  }

  BasicOutcome play(Action ours) override {
    if (ours != kPray && ours != kCurse) {
      throw ContractViolation("heaven-hell action must be 0 (pray) or 1 (curse)");
    }
    ++basic_time_;
    if (ours == kCurse) {
      in_hell_ = true;
      streak_ = 0;
    } else if (in_hell_ && redeemable_) {
      if (streak_ == 0) required_ = basic_time_;
      if (++streak_ >= required_) {
        in_hell_ = false;
        streak_ = 0;
      }
    }
    const Action state = in_hell_ ? 1 : 0;
    return {state, in_hell_ ? 1.0 : 0.0};
  }

 private:
  bool redeemable_;
  bool in_hell_ = false;
  std::int64_t streak_ = 0;
  std::int64_t required_ = 0;
};

}  // namespace

std::shared_ptr<const Strategy> constant_strategy(Action action, std::string name) {
  if (name.empty()) name = "constant_" + std::to_string(action);
  return std::make_shared<ConstantStrategy>(action, std::move(name));
}

std::shared_ptr<const Strategy> tit_for_tat_strategy() {
  return std::make_shared<TitForTatStrategy>();
}

std::shared_ptr<const Strategy> alternating_strategy() {
  return std::make_shared<AlternatingStrategy>();
}

std::shared_ptr<const Strategy> pavlov_strategy() {
  return std::make_shared<PavlovStrategy>();
}

const std::vector<StrategyInfo>& strategy_registry() {
  // Kraft sum: 1/4 + 1/4 + 1/8 + 1/16 + 1/16 + 1/32 + 1/32 = 13/16.
  static const std::vector<StrategyInfo> registry = {
      {"always_defect", 2, constant_strategy(kDefect, "always_defect")},
      {"always_cooperate", 2, constant_strategy(kCooperate, "always_cooperate")},
      {"tit_for_tat", 3, tit_for_tat_strategy()},
      {"alternate", 4, alternating_strategy()},
      {"pavlov", 4, pavlov_strategy()},
      {"pray", 5, constant_strategy(kPray, "pray")},
      {"curse", 5, constant_strategy(kCurse, "curse")},
  };
  return registry;
}

const StrategyInfo& find_strategy(const std::string& name) {
  for (const auto& info : strategy_registry()) {
    if (info.name == name) return info;
  }
  throw ConfigError("unknown strategy \"" + name + "\"");
}

LossMatrix default_pd_matrix() {
  LossMatrix m{};
  m[kCooperate][kCooperate] = 0.2;
  m[kCooperate][kDefect] = 1.0;
  m[kDefect][kCooperate] = 0.0;
  m[kDefect][kDefect] = 0.8;
  return m;
}

LossMatrix default_chicken_matrix() {
  LossMatrix m{};
  m[kDefect][kDefect] = 1.0;
  m[kDefect][kCooperate] = 0.0;
  m[kCooperate][kDefect] = 0.8;
  m[kCooperate][kCooperate] = 0.5;
  return m;
}

void validate_pd_matrix(const LossMatrix& m) {
  for (const auto& row : m) {
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("PD losses must lie in [0, 1]");
    }
  }
  const bool defect_dominant = m[kDefect][kCooperate] < m[kCooperate][kCooperate] &&
                               m[kDefect][kDefect] < m[kCooperate][kDefect];
  if (!defect_dominant) throw InvalidArgument("PD matrix: defecting must be dominant");
  if (!(m[kCooperate][kCooperate] < m[kDefect][kDefect])) {
    throw InvalidArgument("PD matrix: mutual cooperation must beat mutual defection");
  }
}

std::unique_ptr<RepeatedGame> make_pd_tit_for_tat(const LossMatrix& pd_matrix) {
  validate_pd_matrix(pd_matrix);
  return std::make_unique<PdTitForTat>(pd_matrix);
}

std::unique_ptr<RepeatedGame> make_chicken(std::int64_t primitive_threshold,
                                           const LossMatrix& matrix) {
  if (primitive_threshold < 1) throw InvalidArgument("chicken threshold must be >= 1");
  return std::make_unique<PrimitiveChicken>(matrix, primitive_threshold);
}

std::unique_ptr<RepeatedGame> make_heaven_hell() { return std::make_unique<HeavenHell>(false); }

std::unique_ptr<RepeatedGame> make_heaven_hell_variant() {
  return std::make_unique<HeavenHell>(true);
}

}  // namespace foelab
