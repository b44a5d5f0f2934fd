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

#ifndef FOELAB_SELECTORS_HPP_
#define FOELAB_SELECTORS_HPP_

#include <span>
#include <vector>

#include "foelab/expert_pool.hpp"
#include "foelab/random.hpp"

namespace foelab {

// One fresh exponential perturbation per expert, indexed by expert id.
// Entries of inactive experts are left at zero and never read.
struct PerturbationDraw {
  std::vector<double> values;
};

// Samples q^i ~ Exp(1) independently for every expert active at t, in id
// order.
PerturbationDraw draw_perturbations(const ExpertPool& pool, Time t, RandomStream& stream);

// Per-expert score eta * (l^i_{<t} + current^i) + k^i - q^i; +inf for
// experts not yet active. An empty `current_est_loss` means zeros.
std::vector<double> perturbed_scores(const ExpertPool& pool, Time t, double learning_rate,
                                     std::span<const double> current_est_loss,
                                     const PerturbationDraw& draw);

// Follow the perturbed leader: argmin over active i of
//   eta * l^i_{<t} + k^i - q^i,
// ties broken by the lowest id.
ExpertId fpl_select(const ExpertPool& pool, Time t, double learning_rate,
                    const PerturbationDraw& draw);

// The infeasible variant: same as fpl_select but scores use l^i_{<t} plus the
// current step's estimated loss. Only used to check FPL in tests and
// validators.
ExpertId ifpl_select(const ExpertPool& pool, Time t, double learning_rate,
                     std::span<const double> current_est_loss,
                     const PerturbationDraw& draw);

}  // namespace foelab

#endif  // FOELAB_SELECTORS_HPP_
