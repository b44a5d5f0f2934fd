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

#ifndef FOELAB_ENVIRONMENT_HPP_
#define FOELAB_ENVIRONMENT_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "foelab/expert_pool.hpp"
#include "foelab/schedules.hpp"

namespace foelab {

struct RevealEntry {
  Time t = 0;
  ExpertId expert = 0;
};

// Adversary at the master time scale.
//
// Protocol per step t: assign_losses(t) fixes the whole loss vector before
// the learner moves; reveal(i) then returns the loss of the played expert
// only, and may be called at most once per step. Every reveal is logged so
// runs can be audited for bandit feedback. hidden_losses() exposes the
// assigned vector for regret bookkeeping by the harness; the learner never
// reads it.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::size_t num_experts() const = 0;
  // Declared upper bound B_t on every assigned loss.
  virtual double loss_bound(Time t) const = 0;
  virtual std::string kind() const = 0;
  // True for environments built from a repeated game on the basic time scale.
  virtual bool basic_scale() const { return false; }

  // Fixes the loss vector for step t. Steps must be consecutive from 1.
  // Throws ContractViolation if a loss leaves [0, B_t].
  void assign_losses(Time t);
  // Bandit feedback for the played expert.
  double reveal(ExpertId expert);

  std::span<const double> hidden_losses() const { return losses_; }
  Time current_step() const { return step_; }
  const std::vector<RevealEntry>& reveal_log() const { return reveal_log_; }
  // True iff the log holds exactly one reveal for every assigned step.
  bool one_reveal_per_step() const;

 protected:
  virtual void compute_losses(Time t, std::span<double> out) = 0;
  // Called after a reveal so adaptive environments can advance their state.
  virtual void on_played(ExpertId /*expert*/) {}

 private:
  std::vector<double> losses_;
  std::vector<RevealEntry> reveal_log_;
  Time step_ = 0;
  bool revealed_ = true;
};

// Loss vectors that depend only on t.
using LossGenerator = std::function<void(Time, std::span<double>)>;

class ObliviousEnvironment : public Environment {
 public:
  ObliviousEnvironment(std::string kind, std::size_t num_experts, Schedules schedules,
                       LossGenerator generator);

  std::size_t num_experts() const override { return num_experts_; }
  double loss_bound(Time t) const override { return schedules_.loss_bound(t); }
  std::string kind() const override { return kind_; }

 protected:
  void compute_losses(Time t, std::span<double> out) override { generator_(t, out); }

 private:
  std::string kind_;
  std::size_t num_experts_;
  Schedules schedules_;
  LossGenerator generator_;
};

// Row (t-1) mod rows of the table is the loss vector at t. Rows must all
// have the same width; an entry is rejected if it exceeds the loss bound at
// the first step that uses it.
std::unique_ptr<ObliviousEnvironment> make_oblivious_table(
    std::vector<std::vector<double>> table, const Schedules& schedules);

// Independent Bernoulli losses per expert with the given means; B_t = 1.
std::unique_ptr<ObliviousEnvironment> make_bernoulli(std::vector<double> means,
                                                     std::uint64_t seed,
                                                     const Schedules& schedules);

// Fixed-in-advance adversarial table with a rotating leader. During
// t in [2^p, 2^(p+1)), expert p mod n has loss 0, expert (p+1) mod n has
// loss 1 and all others 0.5.
std::unique_ptr<ObliviousEnvironment> make_phased_adversary(std::size_t num_experts,
                                                            const Schedules& schedules);

// Every expert receives the same constant loss.
std::unique_ptr<ObliviousEnvironment> make_constant(std::size_t num_experts, double loss,
                                                    const Schedules& schedules);

}  // namespace foelab

#endif  // FOELAB_ENVIRONMENT_HPP_
