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
#include "foelab/environment.hpp"
#include "foelab/errors.hpp"
#include "foelab/games.hpp"

namespace foelab {
namespace {

std::vector<double> play_all(RepeatedGame& g, const std::vector<Action>& ours,
                             std::vector<Action>* observed = nullptr) {
  std::vector<double> losses;
  for (Action a : ours) {
    const auto o = g.play(a);
    losses.push_back(o.loss);
    if (observed) observed->push_back(o.observation);
  }
  return losses;
}

constexpr Action C = kCooperate;
constexpr Action D = kDefect;

TEST_CASE("prisoner's dilemma against tit-for-tat") {
  const LossMatrix m = default_pd_matrix();
  auto g = make_pd_tit_for_tat(m);
  std::vector<Action> opp;
  auto losses = play_all(*g, {C, C, C}, &opp);
  CHECK(opp == std::vector<Action>{C, C, C});
  for (double l : losses) CHECK(l == m[C][C]);

  auto h = make_pd_tit_for_tat(m);
  opp.clear();
  play_all(*h, {D, C, C}, &opp);
  CHECK(opp == std::vector<Action>{C, D, C});

  auto defect = make_pd_tit_for_tat(m);
  losses = play_all(*defect, std::vector<Action>(50, D));
  CHECK(losses.front() == m[D][C]);
  CHECK(losses.back() == m[D][D]);
  CHECK(m[C][C] < m[D][D]);
}

TEST_CASE("tit-for-tat trace property") {
  auto g = make_pd_tit_for_tat(default_pd_matrix());
  std::vector<Action> ours, opp;
  unsigned x = 12345;
  for (int k = 0; k < 500; ++k) {
    x = x * 1103515245u + 12345u;
    ours.push_back((x >> 16) & 1);
  }
  play_all(*g, ours, &opp);
  for (std::size_t k = 1; k < ours.size(); ++k) CHECK(opp[k] == ours[k - 1]);
}

TEST_CASE("pd matrix ordering") {
  LossMatrix bad = default_pd_matrix();
  bad[C][C] = 0.9;  // mutual cooperation worse than mutual defection
  CHECK_THROWS_AS(make_pd_tit_for_tat(bad), InvalidArgument);
  LossMatrix range = default_pd_matrix();
  range[C][D] = 1.5;
  CHECK_THROWS_AS(make_pd_tit_for_tat(range), InvalidArgument);
}

TEST_CASE("primitive chicken opponent") {
  const LossMatrix m = default_chicken_matrix();
  CHECK(m[D][D] == 1.0);
  CHECK(m[D][C] == 0.0);
  CHECK(m[C][D] == 0.8);
  CHECK(m[C][C] == 0.5);
  auto g = make_chicken(3);
  std::vector<Action> opp;
  auto losses = play_all(*g, {D, D, D, D, D, C, C}, &opp);
  CHECK(opp == std::vector<Action>{D, D, D, C, C, C, D});
  CHECK(losses == std::vector<double>{1.0, 1.0, 1.0, 0.0, 0.0, 0.5, 0.8});
  CHECK_THROWS_AS(make_chicken(0), InvalidArgument);
}

TEST_CASE("heaven and hell") {
  auto g = make_heaven_hell();
  CHECK(play_all(*g, {kPray, kPray, kPray}) == std::vector<double>{0, 0, 0});
  auto h = make_heaven_hell();
  CHECK(play_all(*h, {kPray, kCurse, kPray}) == std::vector<double>{0, 1, 1});
  CHECK(play_all(*h, std::vector<Action>(100, kPray)) == std::vector<double>(100, 1.0));
}

TEST_CASE("heaven and hell variant") {
  auto g = make_heaven_hell_variant();
  // Hell from t=2; prayer streak starts at t=5 and needs 5 steps (t=5..9).
  auto losses = play_all(*g, {kPray, kCurse, kCurse, kCurse, kPray, kPray, kPray, kPray,
                              kPray, kPray});
  CHECK(losses == std::vector<double>{0, 1, 1, 1, 1, 1, 1, 1, 0, 0});
  auto reset = make_heaven_hell_variant();
  losses = play_all(*reset, {kCurse, kPray, kCurse, kPray, kPray, kPray, kPray});
  // Streak restarted at t=4, so it needs 4 steps and ends at t=7.
  CHECK(losses == std::vector<double>{1, 1, 1, 1, 1, 1, 0});
}

TEST_CASE("game clones are independent") {
  auto g = make_pd_tit_for_tat(default_pd_matrix());
  g->play(D);
  auto copy = g->clone();
  CHECK(copy->play(C).observation == D);
  CHECK(g->play(D).observation == D);
  CHECK(copy->basic_time() == 2);
}

TEST_CASE("strategies") {
  GameHistory h;
  CHECK(constant_strategy(C)->act(h) == C);
  CHECK(constant_strategy(D)->act(h) == D);
  auto tft = tit_for_tat_strategy();
  CHECK(tft->act(h) == C);
  h.push(C, D);
  CHECK(tft->act(h) == D);
  h.push(D, C);
  CHECK(tft->act(h) == C);
  h.truncate(1);
  CHECK(h.size() == 1);
  double kraft = 0.0;
  for (const auto& s : strategy_registry()) kraft += std::ldexp(1.0, -s.code_length);
  CHECK(kraft <= 1.0);
  CHECK(find_strategy("always_defect").strategy->act(h) == D);
  CHECK_THROWS_AS(find_strategy("grim"), ConfigError);
}

TEST_CASE("oblivious table environment") {
  const Schedules s;
  auto env = make_oblivious_table({{0.0, 1.0}, {1.0, 0.0}}, s);
  double total0 = 0.0, total1 = 0.0;
  for (Time t = 1; t <= 10; ++t) {
    env->assign_losses(t);
    total0 += env->hidden_losses()[0];
    total1 += env->hidden_losses()[1];
    env->reveal(t % 2);
  }
  CHECK(total0 == 5.0);
  CHECK(total1 == 5.0);
  CHECK(env->one_reveal_per_step());
  CHECK_THROWS_AS(make_oblivious_table({{0.0, 1.5}}, s), InvalidArgument);
}

TEST_CASE("bandit feedback contract") {
  const Schedules s;
  auto env = make_constant(2, 0.3, s);
  CHECK_THROWS_AS(env->reveal(0), ContractViolation);
  env->assign_losses(1);
  CHECK_THROWS_AS(env->assign_losses(2), ContractViolation);
  CHECK(env->reveal(1) == 0.3);
  CHECK_THROWS_AS(env->reveal(0), ContractViolation);
  CHECK_THROWS_AS(env->assign_losses(3), ContractViolation);
  env->assign_losses(2);
  env->reveal(0);
  CHECK(env->reveal_log().size() == 2);
  CHECK(env->one_reveal_per_step());
}

TEST_CASE("losses outside the bound are rejected") {
  const Schedules s;
  ObliviousEnvironment env("bad", 1, s, [](Time, std::span<double> out) { out[0] = 1.25; });
  CHECK_THROWS_AS(env.assign_losses(1), ContractViolation);
}

TEST_CASE("bernoulli arms") {
  const Schedules s;
  auto env = make_bernoulli({0.3, 0.5}, 11, s);
  double sum0 = 0.0, sum1 = 0.0;
  const int n = 200000;
  for (Time t = 1; t <= n; ++t) {
    env->assign_losses(t);
    sum0 += env->hidden_losses()[0];
    sum1 += env->hidden_losses()[1];
    env->reveal(0);
  }
  // 5 binomial standard errors.
  CHECK(std::abs(sum0 / n - 0.3) < 5 * std::sqrt(0.21 / n));
  CHECK(std::abs(sum1 / n - 0.5) < 5 * std::sqrt(0.25 / n));
}

TEST_CASE("phased adversary") {
  const Schedules s;
  auto env = make_phased_adversary(3, s);
  // Phase 0 is t=1, phase 1 is t=2..3, phase 2 is t=4..7.
  env->assign_losses(1);
  CHECK(std::vector<double>(env->hidden_losses().begin(), env->hidden_losses().end()) ==
        std::vector<double>{0.0, 1.0, 0.5});
  env->reveal(0);
  env->assign_losses(2);
  CHECK(std::vector<double>(env->hidden_losses().begin(), env->hidden_losses().end()) ==
        std::vector<double>{0.5, 0.0, 1.0});
  env->reveal(0);
  env->assign_losses(3);
  env->reveal(0);
  env->assign_losses(4);
  CHECK(std::vector<double>(env->hidden_losses().begin(), env->hidden_losses().end()) ==
        std::vector<double>{1.0, 0.5, 0.0});
}

}  // namespace
}  // namespace foelab
