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

#include "foelab/environment.hpp"

#include <cmath>
#include <utility>

#include "foelab/errors.hpp"
#include "foelab/random.hpp"

namespace foelab {

void Environment::assign_losses(Time t) {
  if (t != step_ + 1) {
    throw ContractViolation("assign_losses: expected step " + std::to_string(step_ + 1) +
                            ", got " + std::to_string(t));
  }
  if (!revealed_) {
    throw ContractViolation("assign_losses: step " + std::to_string(step_) +
                            " ended without a reveal");
  }
  losses_.assign(num_experts(), 0.0);
  compute_losses(t, losses_);
  const double bound = loss_bound(t);
  for (std::size_t i = 0; i < losses_.size(); ++i) {
    const double v = losses_[i];
    if (!(v >= 0.0 && v <= bound)) {
      throw ContractViolation("environment assigned loss " + std::to_string(v) +
                              " to expert " + std::to_string(i) + " at t = " +
                              std::to_string(t) + ", outside [0, " +
                              std::to_string(bound) + "]");
    }
  }
  step_ = t;
  revealed_ = false;
}

double Environment::reveal(ExpertId expert) {
  if (step_ == 0) throw ContractViolation("reveal before any losses were assigned");
  if (revealed_) {
    throw ContractViolation("second reveal at t = " + std::to_string(step_));
  }
  if (expert >= losses_.size()) {
    throw ContractViolation("reveal of unknown expert " + std::to_string(expert));
  }
  revealed_ = true;
  reveal_log_.push_back({step_, expert});
  const double loss = losses_[expert];
  on_played(expert);
  return loss;
}

bool Environment::one_reveal_per_step() const {
  if (static_cast<Time>(reveal_log_.size()) != step_) return false;
  for (std::size_t k = 0; k < reveal_log_.size(); ++k) {
    if (reveal_log_[k].t != static_cast<Time>(k) + 1) return false;
  }
  return true;
}

ObliviousEnvironment::ObliviousEnvironment(std::string kind, std::size_t num_experts,
                                           Schedules schedules, LossGenerator generator)
    : kind_(std::move(kind)),
      num_experts_(num_experts),
      schedules_(std::move(schedules)),
      generator_(std::move(generator)) {
  if (num_experts_ == 0) throw InvalidArgument("environment needs at least one expert");
}

std::unique_ptr<ObliviousEnvironment> make_oblivious_table(
    std::vector<std::vector<double>> table, const Schedules& schedules) {
  if (table.empty() || table.front().empty()) {
    throw InvalidArgument("loss table must have at least one row and one column");
  }
  const std::size_t width = table.front().size();
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (table[r].size() != width) throw InvalidArgument("loss table rows differ in width");
    const double bound = schedules.loss_bound(static_cast<Time>(r) + 1);
    for (double v : table[r]) {
      if (!(v >= 0.0 && v <= bound)) {
        throw InvalidArgument("loss table entry " + std::to_string(v) + " in row " +
                              std::to_string(r) + " outside [0, B_t]");
      }
    }
  }
  auto rows = std::make_shared<const std::vector<std::vector<double>>>(std::move(table));
  return std::make_unique<ObliviousEnvironment>(
      "oblivious_table", width, schedules, [rows](Time t, std::span<double> out) {
        const auto& row = (*rows)[static_cast<std::size_t>(t - 1) % rows->size()];
        std::copy(row.begin(), row.end(), out.begin());
      });
}

std::unique_ptr<ObliviousEnvironment> make_bernoulli(std::vector<double> means,
                                                     std::uint64_t seed,
                                                     const Schedules& schedules) {
  if (means.empty()) throw InvalidArgument("bernoulli environment needs at least one arm");
  for (double m : means) {
    if (!(m >= 0.0 && m <= 1.0)) throw InvalidArgument("bernoulli means must lie in [0, 1]");
  }
  auto stream = std::make_shared<RandomStream>(seed, "env");
  const std::size_t n = means.size();
  return std::make_unique<ObliviousEnvironment>(
      "bernoulli", n, schedules,
      [means = std::move(means), stream](Time, std::span<double> out) {
        for (std::size_t i = 0; i < means.size(); ++i) {
          out[i] = stream->uniform() < means[i] ? 1.0 : 0.0;
        }
      });
}

std::unique_ptr<ObliviousEnvironment> make_phased_adversary(std::size_t num_experts,
                                                            const Schedules& schedules) {
  if (num_experts < 2) throw InvalidArgument("phased adversary needs >= 2 experts");
  return std::make_unique<ObliviousEnvironment>(
      "phased_adversary", num_experts, schedules,
      [num_experts](Time t, std::span<double> out) {
        std::size_t phase = 0;
        for (Time s = t; s > 1; s >>= 1) ++phase;
        std::fill(out.begin(), out.end(), 0.5);
        out[phase % num_experts] = 0.0;
        out[(phase + 1) % num_experts] = 1.0;
      });
}

std::unique_ptr<ObliviousEnvironment> make_constant(std::size_t num_experts, double loss,
                                                    const Schedules& schedules) {
  if (!(loss >= 0.0 && loss <= schedules.loss_bound(1))) {
    throw InvalidArgument("constant loss outside [0, B_1]");
  }
  return std::make_unique<ObliviousEnvironment>(
      "constant", num_experts, schedules,
      [loss](Time, std::span<double> out) { std::fill(out.begin(), out.end(), loss); });
}

}  // namespace foelab
