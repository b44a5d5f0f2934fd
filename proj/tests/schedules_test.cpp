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

#include "doctest.h"
#include "foelab/errors.hpp"
#include "foelab/schedules.hpp"

namespace foelab {
namespace {

TEST_CASE("exploration rate") {
  const Schedules s;
  CHECK(s.exploration_rate(1) == 1.0);
  CHECK(s.exploration_rate(16) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.exploration_rate(256) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(s.exploration_rate(0), InvalidArgument);
}

TEST_CASE("learning rate") {
  const Schedules s;
  CHECK(s.learning_rate(1) == 1.0);
  CHECK(std::abs(s.learning_rate(16) - 0.125) < 1e-12);
  CHECK(std::abs(s.learning_rate(10000) - 0.001) < 1e-12);
  CHECK_THROWS_AS(s.learning_rate(0), InvalidArgument);
  CHECK_THROWS_AS(s.learning_rate(-3), InvalidArgument);
}

TEST_CASE("loss bound regimes") {
  const Schedules one;
  CHECK(one.loss_bound(999) == 1.0);
  CHECK(one.block_length(999) == 1);

  ScheduleConfig power = bounded_loss_schedule();
  power.loss_bound_regime = LossBoundRegime::kPower;
  const Schedules p(power);
  CHECK(std::abs(p.loss_bound(65536) - 2.0) < 1e-12);
  CHECK(std::abs(p.loss_bound(16) - std::pow(16.0, 1.0 / 16.0)) < 1e-12);
  CHECK_THROWS_AS(p.loss_bound(0), InvalidArgument);

  const Schedules r(reactive_schedule());
  CHECK(r.loss_bound(16) == 1.0);
  CHECK(r.block_length(16) == 1);
  CHECK(r.block_length(65535) == 1);
  CHECK(r.block_length(65536) == 2);
  CHECK(r.loss_bound(65536) == 2.0);
}

TEST_CASE("entering time") {
  ScheduleConfig c;
  c.entering_exponent = 16;
  const Schedules s16(c);
  c.entering_exponent = 8;
  const Schedules s8(c);
  CHECK(s16.entering_time(0.25, 0.25) == 1);
  CHECK(s16.entering_time(0.125, 0.25) == 65536);
  CHECK(s8.entering_time(0.125, 0.25) == 256);
  CHECK(s8.entering_time(0.1, 0.3) == static_cast<Time>(std::ceil(std::pow(3.0, 8))));
  CHECK_THROWS_AS(s8.entering_time(0.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(s8.entering_time(0.6, 0.5), InvalidArgument);
  CHECK(s16.entering_time(1e-300, 1.0) == kNeverActive);
}

TEST_CASE("entering time is nonincreasing in weight") {
  const Schedules s;
  Time prev = kNeverActive;
  for (double w = 0.01; w <= 1.0; w += 0.01) {
    const Time tau = s.entering_time(w, 1.0);
    CHECK(tau <= prev);
    prev = tau;
  }
}

TEST_CASE("estimated loss bound") {
  CHECK(estimated_loss_bound(1.0, 0.5, 0.5) == 4.0);
  CHECK(estimated_loss_bound(1.0, 1.0, 1.0) == 1.0);
  CHECK(std::abs(estimated_loss_bound(2.0, 0.25, 0.1) - 80.0) < 1e-12);
  CHECK_THROWS_AS(estimated_loss_bound(1.0, 0.5, 0.0), PoolError);
  CHECK_THROWS_AS(estimated_loss_bound(1.0, 0.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(estimated_loss_bound(1.0, 1.5, 0.5), InvalidArgument);
}

TEST_CASE("confidence") {
  const Schedules s;
  CHECK(std::abs(s.confidence(10) - 0.01) < 1e-15);
  CHECK(std::abs(s.confidence(100) - 1e-4) < 1e-15);
  CHECK(s.confidence(2) == 0.25);
  CHECK_THROWS_AS(s.confidence(1), InvalidArgument);
}

TEST_CASE("schedules are monotone and pure") {
  const Schedules s;
  for (Time t = 1; t < 5000; ++t) {
    CHECK(s.exploration_rate(t + 1) <= s.exploration_rate(t));
    CHECK(s.learning_rate(t + 1) < s.learning_rate(t));
    CHECK(estimated_loss_bound(s.loss_bound(t), s.exploration_rate(t), 0.3) >= s.loss_bound(t));
  }
  const Schedules again;
  CHECK(s.learning_rate(777) == again.learning_rate(777));
  CHECK(s.exploration_rate(12345) == again.exploration_rate(12345));
}

TEST_CASE("config validation") {
  ScheduleConfig c;
  c.exploration_exponent = Rational{1, 1};
  CHECK_THROWS_AS(Schedules{c}, InvalidArgument);
  c = ScheduleConfig{};
  c.learning_exponent = Rational{0, 1};
  CHECK_THROWS_AS(Schedules{c}, InvalidArgument);
  c = ScheduleConfig{};
  c.entering_exponent = 0;
  CHECK_THROWS_AS(Schedules{c}, InvalidArgument);
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("1/16") == Rational{1, 16});
  CHECK(Rational::parse("0.25").value() == 0.25);
  CHECK(Rational::from_double(0.75).value() == 0.75);
  CHECK_THROWS_AS(Rational::parse("1/0"), InvalidArgument);
  CHECK_THROWS_AS(Rational::parse("abc"), InvalidArgument);
}

}  // namespace
}  // namespace foelab
