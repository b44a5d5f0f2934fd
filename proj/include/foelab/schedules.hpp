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

#ifndef FOELAB_SCHEDULES_HPP_
#define FOELAB_SCHEDULES_HPP_

#include <cstdint>
#include <limits>
#include <string>

namespace foelab {

// Master time steps are 1-based.
using Time = std::int64_t;

// Entering time of an expert that never joins within any representable
// horizon.
inline constexpr Time kNeverActive = std::numeric_limits<Time>::max();

// Exact exponent p/q with q > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  // Accepts "p/q", "p", or a decimal string. Decimals are converted exactly
  // when they are dyadic or have a short denominator.
  static Rational parse(const std::string& text);
  static Rational from_double(double x);

  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class LossBoundRegime { kConstantOne, kPower };

struct ScheduleConfig {
  Rational exploration_exponent{1, 4};
  Rational learning_exponent{3, 4};
  int entering_exponent = 8;
  LossBoundRegime loss_bound_regime = LossBoundRegime::kConstantOne;
  Rational loss_bound_exponent{1, 16};
  // Integer loss bounds B_t = floor(t^beta); required for block lengths.
  bool floor_loss_bound = false;
  Rational confidence_exponent{2, 1};

  // Throws InvalidArgument when an exponent is out of range.
  void validate() const;
};

// Bounded-loss defaults: B_t = 1, tau = ceil((w/w_max)^-8).
ScheduleConfig bounded_loss_schedule();
// Growing-loss / reactive defaults: B_t = floor(t^(1/16)), tau exponent 16.
ScheduleConfig reactive_schedule();

// Closed-form schedules. All members are pure; t = 0 is rejected.
class Schedules {
 public:
  explicit Schedules(ScheduleConfig config = {});

  const ScheduleConfig& config() const { return config_; }

  // gamma_t = t^-exploration_exponent.
  double exploration_rate(Time t) const;
  // eta_t = t^-learning_exponent.
  double learning_rate(Time t) const;
  // B_t: 1, t^beta, or floor(t^beta) depending on the regime.
  double loss_bound(Time t) const;
  // Number of basic steps the reactive wrapper hands to an expert at master
  // step t: max(1, floor(t^beta)) in the power regime, 1 otherwise.
  std::int64_t block_length(Time t) const;
  // tau = ceil((w / w_max)^-alpha), saturating at kNeverActive.
  Time entering_time(double weight, double max_weight) const;
  // delta_T = T^-confidence_exponent, T >= 2.
  double confidence(Time horizon) const;

 private:
  ScheduleConfig config_;
};

// B^_t = B_t / (gamma_t * min active weight).
double estimated_loss_bound(double loss_bound, double exploration_rate,
                            double min_active_weight);

}  // namespace foelab

#endif  // FOELAB_SCHEDULES_HPP_
