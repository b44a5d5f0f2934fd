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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "foelab/errors.hpp"
#include "foelab/games.hpp"
#include "foelab/reactive.hpp"

namespace foelab {
namespace {

// Blocks of length t at master step t.
Schedules linear_blocks() {
  ScheduleConfig c = reactive_schedule();
  c.loss_bound_exponent = Rational{1, 1};
  return Schedules(c);
}

std::vector<std::shared_ptr<const Strategy>> cooperate_defect() {
  return {constant_strategy(kCooperate), constant_strategy(kDefect)};
}

TEST_CASE("cooperating after a defection, hand simulated") {
  const LossMatrix m = default_pd_matrix();
  BlockEnvironment env(make_pd_tit_for_tat(m), cooperate_defect(), linear_blocks(), 100);
  env.assign_losses(1);
  CHECK(env.hidden_losses()[0] == m[kCooperate][kCooperate]);
  CHECK(env.hidden_losses()[1] == m[kDefect][kCooperate]);
  env.reveal(1);
  env.assign_losses(2);
  env.reveal(1);
  env.assign_losses(3);
  // Tit-for-tat answers the earlier defection once, then cooperates.
  const double coop = m[kCooperate][kDefect] + 2 * m[kCooperate][kCooperate];
  CHECK(std::abs(env.hidden_losses()[0] - coop) < 1e-12);
  CHECK(std::abs(env.hidden_losses()[1] - 3 * m[kDefect][kDefect]) < 1e-12);
  CHECK(env.reveal(0) == doctest::Approx(coop).epsilon(1e-12));
  const auto& steps = env.basic_steps();
  REQUIRE(steps.size() == 6);
  CHECK(steps[3].loss == m[kCooperate][kDefect]);
  CHECK(steps[4].loss == m[kCooperate][kCooperate]);
  CHECK(steps[5].loss == m[kCooperate][kCooperate]);
  CHECK(steps[5].master_t == 3);
  CHECK(env.block_starts() == std::vector<Time>{1, 2, 4});
}

TEST_CASE("final block is truncated at the horizon") {
  BlockEnvironment env(make_pd_tit_for_tat(default_pd_matrix()), cooperate_defect(),
                       linear_blocks(), 5);
  const Schedules s = linear_blocks();
  auto run = run_tilde_foe(ExpertPool::uniform(2, s), env, s, 3);
  CHECK(run.block_lengths == std::vector<std::int64_t>{1, 2, 2});
  CHECK(run.basic_steps.size() == 5);
  CHECK(run.master.length() == 3);
  CHECK(run.bandit_audit_ok);
  CHECK_THROWS_AS(env.assign_losses(4), ContractViolation);
}

TEST_CASE("reactive block lengths and bookkeeping") {
  const Schedules s(reactive_schedule());
  const Time horizon = 70000;
  BlockEnvironment env(make_pd_tit_for_tat(default_pd_matrix()), cooperate_defect(), s, horizon);
  auto run = run_tilde_foe(ExpertPool::uniform(2, s), env, s, 1);
  const auto& starts = run.block_starts;
  const auto& lengths = run.block_lengths;
  REQUIRE(lengths.size() >= 65536);
  for (std::size_t k = 0; k < 15; ++k) {
    CHECK(lengths[k] == 1);
    CHECK(starts[k] == static_cast<Time>(k) + 1);
  }
  CHECK(lengths[65535] == 2);
  CHECK(lengths[65534] == 1);
  Time next = 1;
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    CHECK(starts[k] == next);
    next += lengths[k];
    const auto& r = run.master.steps()[k];
    CHECK(r.true_loss >= 0.0);
    CHECK(r.true_loss <= r.loss_bound);
  }
  CHECK(next - 1 == horizon);
  CHECK(static_cast<Time>(run.basic_steps.size()) == horizon);
  CHECK(run.bandit_audit_ok);

  // Master loss equals the sum of its block's basic losses.
  std::vector<double> sums(lengths.size(), 0.0);
  for (const auto& b : run.basic_steps) sums[static_cast<std::size_t>(b.master_t - 1)] += b.loss;
  for (std::size_t k = 0; k < sums.size(); ++k) {
    CHECK(std::abs(sums[k] - run.master.steps()[k].true_loss) < 1e-12);
  }
}

TEST_CASE("strategies act on the shared history") {
  // Tit-for-tat as an expert copies the opponent's last observed move even
  // when a different expert produced the surrounding history.
  const Schedules s = linear_blocks();
  std::vector<std::shared_ptr<const Strategy>> experts{constant_strategy(kDefect),
                                                       tit_for_tat_strategy()};
  BlockEnvironment env(make_pd_tit_for_tat(default_pd_matrix()), experts, s, 100);
  env.assign_losses(1);
  env.reveal(0);  // we defect; the opponent answered C
  env.assign_losses(2);
  env.reveal(0);  // D, D; opponent answered D then...
  env.assign_losses(3);
  env.reveal(1);
  const auto& steps = env.basic_steps();
  REQUIRE(steps.size() == 6);
  CHECK(steps[3].action == steps[2].observation);
  CHECK(steps[4].action == steps[3].observation);
}

TEST_CASE("heaven-hell: cursing sends every expert to hell") {
  const Schedules s = linear_blocks();
  std::vector<std::shared_ptr<const Strategy>> experts{constant_strategy(kPray),
                                                       constant_strategy(kCurse)};
  BlockEnvironment env(make_heaven_hell(), experts, s, 100);
  env.assign_losses(1);
  CHECK(env.hidden_losses()[0] == 0.0);
  CHECK(env.hidden_losses()[1] == 1.0);
  env.reveal(1);
  env.assign_losses(2);
  CHECK(env.hidden_losses()[0] == 2.0);
  CHECK(env.hidden_losses()[1] == 2.0);
}

}  // namespace
}  // namespace foelab
