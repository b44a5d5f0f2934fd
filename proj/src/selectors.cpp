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

#include "foelab/selectors.hpp"

#include <limits>

#include "foelab/errors.hpp"

namespace foelab {
std::vector<double> perturbed_scores(const ExpertPool& pool, Time t, double learning_rate,
                                     std::span<const double> current_est_loss,
                                     const PerturbationDraw& draw) {
  if (draw.values.size() != pool.size()) {
    throw InvalidArgument("perturbation draw does not cover the pool");
  }
  if (!current_est_loss.empty() && current_est_loss.size() != pool.size()) {
    throw InvalidArgument("current loss vector does not cover the pool");
  }
  const auto& cum = pool.cumulative_estimated_losses();
  std::vector<double> scores(pool.size(), std::numeric_limits<double>::infinity());
  for (const Expert& e : pool.experts()) {
    if (t < e.entering_time) continue;
    double loss = cum[e.id];
    if (!current_est_loss.empty()) loss += current_est_loss[e.id];
    scores[e.id] = learning_rate * loss + e.complexity - draw.values[e.id];
  }
  return scores;
}

namespace {

ExpertId perturbed_argmin(const ExpertPool& pool, Time t, double learning_rate,
                          std::span<const double> current_est_loss,
                          const PerturbationDraw& draw) {
  const std::vector<double> scores =
      perturbed_scores(pool, t, learning_rate, current_est_loss, draw);
  ExpertId best = pool.size();
  for (const Expert& e : pool.experts()) {
    if (t < e.entering_time) continue;
    if (best == pool.size() || scores[e.id] < scores[best]) best = e.id;
  }
  if (best == pool.size()) {
    throw PoolError("perturbed leader: no expert is active at t = " + std::to_string(t));
  }
  return best;
}

}  // namespace

PerturbationDraw draw_perturbations(const ExpertPool& pool, Time t, RandomStream& stream) {
  PerturbationDraw draw;
  draw.values.assign(pool.size(), 0.0);
  for (const Expert& e : pool.experts()) {
    if (t >= e.entering_time) draw.values[e.id] = stream.exponential();
  }
  return draw;
}

ExpertId fpl_select(const ExpertPool& pool, Time t, double learning_rate,
                    const PerturbationDraw& draw) {
  return perturbed_argmin(pool, t, learning_rate, {}, draw);
}

ExpertId ifpl_select(const ExpertPool& pool, Time t, double learning_rate,
                     std::span<const double> current_est_loss,
                     const PerturbationDraw& draw) {
  if (current_est_loss.size() != pool.size()) {
    throw InvalidArgument("ifpl_select: current loss vector does not cover the pool");
  }
  return perturbed_argmin(pool, t, learning_rate, current_est_loss, draw);
}

}  // namespace foelab
