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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "foelab/analysis.hpp"
#include "foelab/errors.hpp"

namespace foelab {
namespace {

Trajectory make_trajectory(const std::vector<double>& foe,
                           const std::vector<std::vector<double>>& experts) {
  Trajectory tr(experts.front().size(), 1);
  for (std::size_t k = 0; k < foe.size(); ++k) {
    StepRecord r;
    r.t = static_cast<Time>(k) + 1;
    r.true_loss = foe[k];
    r.loss_bound = 1.0;
    tr.append(r, experts[k]);
  }
  return tr;
}

TEST_CASE("regret") {
  auto tr = make_trajectory({5.0, 5.0}, {{5.0, 4.0}, {5.0, 3.5}});
  CHECK(regret(tr, 0) == 0.0);
  CHECK(regret(tr, 1) == 2.5);
  auto ahead = make_trajectory({0.0}, {{1.0, 1.0}});
  CHECK(regret(ahead, 0) == -1.0);
  CHECK(best_expert(tr, 2) == 1);
  CHECK_THROWS_AS(regret(tr, 2), InvalidArgument);
  // The best expert is the one with the largest regret.
  double worst = -1e300;
  for (ExpertId i = 0; i < 2; ++i) worst = std::max(worst, regret(tr, i));
  CHECK(regret(tr, best_expert(tr, 2)) == worst);
}

// Straight loop evaluation of the bound for a pool whose active minimum
// weight is known in closed form.
struct OracleTerms {
  double complexity, preentry, drift, exploration, sum_b_hat, sum_b_sq;
};

OracleTerms oracle(Time T, double k, Time tau, const std::vector<std::pair<Time, double>>& pool) {
  OracleTerms o{};
  o.complexity = (k + 1.0) * std::pow(static_cast<double>(T), 0.75);
  for (Time t = 1; t <= T; ++t) {
    const double td = static_cast<double>(t);
    double minw = 1.0;
    for (const auto& [enter, w] : pool) {
      if (t >= enter) minw = std::min(minw, w);
    }
    const double gamma = std::pow(td, -0.25), eta = std::pow(td, -0.75);
    const double bh = 1.0 / (gamma * minw);
    if (t < tau) o.preentry += bh;
    o.drift += gamma * eta * bh * bh;
    o.exploration += gamma;
    o.sum_b_hat += bh;
    o.sum_b_sq += 1.0;
  }
  return o;
}

TEST_CASE("bound terms against a loop oracle") {
  const Schedules s;
  auto pool = ExpertPool::uniform(2, s);
  const auto o = oracle(100, std::log(2.0), 1, {{1, 0.5}, {1, 0.5}});
  for (auto variant : {BoundVariant::kHighProbability, BoundVariant::kExpectation}) {
    const auto r = regret_bound(100, 0, s, pool, variant);
    CHECK(r.delta == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(std::abs(r.complexity_term - o.complexity) < 1e-9);
    CHECK(r.preentry_term == 0.0);
    CHECK(std::abs(r.drift_term - o.drift) < 1e-9);
    CHECK(std::abs(r.exploration_term - o.exploration) < 1e-9);
    const double lg = 2.0 * std::log(4.0 / 1e-4);
    CHECK(std::abs(r.estimated_radical - std::sqrt(lg * o.sum_b_hat)) < 1e-9);
    CHECK(std::abs(r.true_radical - std::sqrt(lg * o.sum_b_sq)) < 1e-9);
    CHECK(std::abs(r.tail_term - 0.5e-4 * o.sum_b_hat) < 1e-9);
    const double common = o.complexity + o.drift + o.exploration;
    const double expect = variant == BoundVariant::kHighProbability
                              ? common + std::sqrt(lg * o.sum_b_hat) + std::sqrt(lg * o.sum_b_sq)
                              : common + std::sqrt(lg * o.sum_b_hat) + 0.5e-4 * o.sum_b_hat;
    CHECK(std::abs(r.total - expect) < 1e-9);
  }
}

TEST_CASE("pre-entry term for a late expert") {
  const Schedules s;  // alpha = 8: weight ratio 2 enters at 256
  const std::vector<double> w{0.5, 0.25};
  auto pool = ExpertPool::from_weights(w, s);
  REQUIRE(pool.expert(1).entering_time == 256);
  const auto o = oracle(1000, std::log(4.0), 256, {{1, 0.5}, {256, 0.25}});
  const auto r = regret_bound(1000, 1, s, pool, BoundVariant::kExpectation);
  CHECK(std::abs(r.preentry_term - o.preentry) < 1e-9 * o.preentry);
  CHECK(std::abs(r.drift_term - o.drift) < 1e-9 * o.drift);
  CHECK(std::abs(r.complexity_term - o.complexity) < 1e-9);
  const auto single = regret_bound(1000, 0, s, ExpertPool::uniform(1, s),
                                     BoundVariant::kHighProbability);
  CHECK(single.preentry_term == 0.0);
}

TEST_CASE("bound terms are monotone in T") {
  const Schedules s;
  const std::vector<double> w{0.5, 0.3, 0.2};
  auto pool = ExpertPool::from_weights(w, s);
  BoundReport prev = regret_bound(2, 2, s, pool, BoundVariant::kHighProbability, 0.1);
  for (Time T = 3; T < 400; T += 7) {
    const auto r = regret_bound(T, 2, s, pool, BoundVariant::kHighProbability, 0.1);
    CHECK(r.preentry_term >= prev.preentry_term);
    CHECK(r.drift_term >= prev.drift_term);
    CHECK(r.exploration_term >= prev.exploration_term);
    CHECK(r.sum_b_hat >= prev.sum_b_hat);
    prev = r;
  }
  CHECK_THROWS_AS(regret_bound(10, 0, s, pool, BoundVariant::kExpectation, 0.0),
                  InvalidArgument);
}

TEST_CASE("unbiasedness on small instances") {
  const Schedules s;
  SUBCASE("single expert") {
    auto pool = ExpertPool::uniform(1, s);
    const std::vector<double> l{0.6};
    const auto r = unbiasedness_validator(pool, 1, 1.0, 1.0, l, 1.0, 100000, 1);
    CHECK(r.pass);
    CHECK(r.experts[0].mean_estimate == doctest::Approx(0.6).epsilon(1e-12));
  }
  SUBCASE("two experts, gamma 1/2") {
    auto pool = ExpertPool::uniform(2, s);
    const std::vector<double> l{0.8, 0.4};
    const auto r = unbiasedness_validator(pool, 5, 0.5, 0.3, l, 1.0, 200000, 2);
    CHECK(r.pass);
    CHECK(r.experts[0].expected_charge == 0.25);
    // Charged with probability 1/4 at 0.8 / (0.5 * 0.5) = 3.2: mean 0.8.
    CHECK(r.experts[0].expected_estimate == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(std::abs(r.experts[0].mean_estimate - 0.8) <= 3 * r.experts[0].se_estimate);
  }
  SUBCASE("zero losses") {
    auto pool = ExpertPool::uniform(3, s);
    const std::vector<double> l{0.0, 0.0, 0.0};
    const auto r = unbiasedness_validator(pool, s, 9, l, 1.0, 100000, 3);
    CHECK(r.pass);
    for (const auto& e : r.experts) CHECK(e.mean_estimate == 0.0);
  }
  auto pool = ExpertPool::uniform(2, s);
  const std::vector<double> l{0.1, 0.2};
  CHECK_THROWS_AS(unbiasedness_validator(pool, 1, 0.0, 1.0, l, 1.0, 100000, 1), InvalidArgument);
  CHECK_THROWS_AS(unbiasedness_validator(pool, 1, 0.5, 1.0, l, 1.0, 10, 1), InvalidArgument);
}

TEST_CASE("fpl and ifpl disagree rarely") {
  const Schedules s;
  auto pool = ExpertPool::uniform(2, s);
  pool.record_estimated_loss(0, 16, 3.0);
  const std::vector<double> l{0.9, 0.2};
  const auto r = fpl_ifpl_gap_check(pool, s, 16, l, 1.0, 200000, 5);
  CHECK(r.learning_rate * r.b_hat == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.gap_pass);
  CHECK(r.disagreement_pass);
  CHECK(r.mean_fpl <= r.factor * r.mean_ifpl + 3 * r.gap_se);
}

TEST_CASE("martingale envelope") {
  const Schedules s;
  std::vector<Trajectory> zero, coin;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto z = make_constant(1, 0.0, s);
    zero.push_back(run_foe(ExpertPool::uniform(1, s), *z, 200, s, seed));
    auto b = make_bernoulli({0.5}, seed, s);
    coin.push_back(run_foe(ExpertPool::uniform(1, s), *b, 10000, s, seed));
  }
  const auto rz = martingale_envelope_check(zero, 0.05);
  CHECK(rz.pass);
  CHECK(rz.violations == 0);
  const auto rc = martingale_envelope_check(coin, 0.05);
  CHECK(rc.pass);
  CHECK(martingale_envelope_check(coin, 1.0).pass);
  CHECK_THROWS_AS(martingale_envelope_check(std::span(coin).first(10), 0.1), InvalidArgument);
}

TEST_CASE("exploration mixture") {
  const Schedules s;
  auto pool = ExpertPool::uniform(2, s);
  for (Time t : {1, 16, 256}) {
    const auto r = exploration_mixture_check(pool, s, t, 100000, 7);
    CHECK(r.pass);
  }
}

TEST_CASE("hannan series") {
  CHECK(log_checkpoints(120) == std::vector<Time>{1, 2, 5, 10, 20, 50, 100, 120});
  CHECK(log_checkpoints(100) == std::vector<Time>{1, 2, 5, 10, 20, 50, 100});
  const Schedules s;
  auto z = make_constant(3, 0.0, s);
  const auto tr = run_foe(ExpertPool::uniform(3, s), *z, 1000, s, 1);
  for (const auto& p : hannan_series(tr)) CHECK(p.per_round_regret == 0.0);
  auto one = make_bernoulli({0.4}, 3, s);
  const auto single = run_foe(ExpertPool::uniform(1, s), *one, 1000, s, 1);
  for (const auto& p : hannan_series(single)) CHECK(p.per_round_regret == 0.0);
}

TEST_CASE("reports serialize") {
  const Schedules s;
  auto pool = ExpertPool::uniform(2, s);
  const auto r = regret_bound(50, 0, s, pool, BoundVariant::kExpectation);
  const auto j = to_json(r);
  CHECK(j.at("total").get<double>() == r.total);
  CHECK(j.at("variant") == "expectation");
  CHECK(to_text(r).find("total") != std::string::npos);
}

}  // namespace
}  // namespace foelab
