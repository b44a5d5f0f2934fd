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

#include "foelab/schedules.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "foelab/errors.hpp"

namespace foelab {
namespace {

void require_clock(Time t, const char* what) {
  if (t < 1) {
    throw InvalidArgument(std::string(what) + ": clock value must be >= 1, got " +
                          std::to_string(t));
  }
}

double power(Time t, double exponent) {
  return std::pow(static_cast<double>(t), exponent);
}

}  // namespace

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("exponent must be finite");
  for (std::int64_t den = 1; den <= (std::int64_t{1} << 20); ++den) {
    const double scaled = x * static_cast<double>(den);
    if (scaled == std::nearbyint(scaled) && std::abs(scaled) < 9.0e15) {
      const auto num = static_cast<std::int64_t>(scaled);
      const std::int64_t g = std::gcd(num, den);
      return Rational{num / g, den / g};
    }
  }
  throw InvalidArgument("exponent " + std::to_string(x) +
                        " has no short rational representation; use \"p/q\"");
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      std::size_t used = 0;
      const double x = std::stod(text, &used);
      if (used != text.size()) throw InvalidArgument("trailing characters");
      return from_double(x);
    }
    std::size_t used_num = 0, used_den = 0;
    const std::string num_text = text.substr(0, slash);
    const std::string den_text = text.substr(slash + 1);
    const std::int64_t num = std::stoll(num_text, &used_num);
    const std::int64_t den = std::stoll(den_text, &used_den);
    if (used_num != num_text.size() || used_den != den_text.size() || den <= 0) {
      throw InvalidArgument("malformed fraction");
    }
    const std::int64_t g = std::gcd(num, den);
    return Rational{num / g, den / g};
  } catch (const std::logic_error&) {
    throw InvalidArgument("cannot parse exponent \"" + text + "\"");
  }
}

void ScheduleConfig::validate() const {
  const double explore = exploration_exponent.value();
  const double learn = learning_exponent.value();
  if (!(explore > 0.0 && explore < 1.0)) {
    throw InvalidArgument("exploration_exponent must lie in (0, 1)");
  }
  if (!(learn > 0.0 && learn < 1.0)) {
    throw InvalidArgument("learning_exponent must lie in (0, 1)");
  }
  if (entering_exponent < 1) {
    throw InvalidArgument("entering_exponent must be >= 1");
  }
  if (loss_bound_regime == LossBoundRegime::kPower &&
      loss_bound_exponent.value() < 0.0) {
    throw InvalidArgument("loss bound exponent must be >= 0");
  }
  if (!(confidence_exponent.value() > 0.0)) {
    throw InvalidArgument("confidence_exponent must be positive");
  }
}

ScheduleConfig bounded_loss_schedule() { return ScheduleConfig{}; }

ScheduleConfig reactive_schedule() {
  ScheduleConfig config;
  config.entering_exponent = 16;
  config.loss_bound_regime = LossBoundRegime::kPower;
  config.loss_bound_exponent = Rational{1, 16};
  config.floor_loss_bound = true;
  return config;
}

Schedules::Schedules(ScheduleConfig config) : config_(config) {
  config_.validate();
}

double Schedules::exploration_rate(Time t) const {
  require_clock(t, "exploration_rate");
  return power(t, -config_.exploration_exponent.value());
}

double Schedules::learning_rate(Time t) const {
  require_clock(t, "learning_rate");
  return power(t, -config_.learning_exponent.value());
}

double Schedules::loss_bound(Time t) const {
  require_clock(t, "loss_bound");
  if (config_.loss_bound_regime == LossBoundRegime::kConstantOne) return 1.0;
  const double b = power(t, config_.loss_bound_exponent.value());
  return config_.floor_loss_bound ? std::max(1.0, std::floor(b)) : b;
}

std::int64_t Schedules::block_length(Time t) const {
  require_clock(t, "block_length");
  if (config_.loss_bound_regime == LossBoundRegime::kConstantOne) return 1;
  const double b = std::floor(power(t, config_.loss_bound_exponent.value()));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(b));
}

Time Schedules::entering_time(double weight, double max_weight) const {
  if (!(weight > 0.0) || !(max_weight <= 1.0) || weight > max_weight) {
    throw InvalidArgument("entering_time: need 0 < w <= w_max <= 1");
  }
  const double ratio = max_weight / weight;
  const double raw = std::pow(ratio, config_.entering_exponent);
  if (!(raw < 0x1.0p62)) return kNeverActive;
  // Snap values within rounding noise of an integer before taking the
  // ceiling, so exact powers such as 2^16 are not bumped by one.
  const double nearest = std::nearbyint(raw);
  const double snapped = std::abs(raw - nearest) <= 1e-9 * nearest ? nearest : raw;
  return std::max<Time>(1, static_cast<Time>(std::ceil(snapped)));
}

double Schedules::confidence(Time horizon) const {
  if (horizon < 2) {
    throw InvalidArgument("confidence: horizon must be >= 2 so that delta < 1");
  }
  return power(horizon, -config_.confidence_exponent.value());
}

double estimated_loss_bound(double loss_bound, double exploration_rate,
                            double min_active_weight) {
  if (!(min_active_weight > 0.0)) {
    throw PoolError("estimated_loss_bound: empty active set");
  }
  if (!(exploration_rate > 0.0 && exploration_rate <= 1.0)) {
    throw InvalidArgument("estimated_loss_bound: exploration rate must lie in (0, 1]");
  }
  return loss_bound / (exploration_rate * min_active_weight);
}

}  // namespace foelab
