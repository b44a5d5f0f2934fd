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

#include "foelab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "foelab/errors.hpp"
#include "foelab/selectors.hpp"

namespace foelab {
namespace {

// Welford running mean / variance.
class Moments {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  double mean() const { return mean_; }
  double standard_error() const {
    if (n_ < 2) return 0.0;
    return std::sqrt(m2_ / static_cast<double>(n_ - 1) / static_cast<double>(n_));
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

bool within_3se(double observed, double expected, double se) {
  if (se == 0.0) return std::abs(observed - expected) <= 1e-12 * std::max(1.0, std::abs(expected));
  return std::abs(observed - expected) <= 3.0 * se;
}

void check_losses(std::span<const double> losses, const ExpertPool& pool, double loss_bound) {
  if (losses.size() != pool.size()) {
    throw InvalidArgument("loss vector does not cover the pool");
  }
  for (double v : losses) {
    if (!(v >= 0.0 && v <= loss_bound)) throw InvalidArgument("loss outside [0, B_t]");
  }
}

const char* variant_name(BoundVariant v) {
  return v == BoundVariant::kHighProbability ? "high_probability" : "expectation";
}

}  // namespace

double regret(const Trajectory& trajectory, ExpertId i) {
  if (trajectory.length() == 0) throw InvalidArgument("regret: empty trajectory");
  return regret(trajectory, i, trajectory.length());
}

double regret(const Trajectory& trajectory, ExpertId i, Time T) {
  return trajectory.foe_loss(T) - trajectory.expert_loss(i, T);
}

ExpertId best_expert(const Trajectory& trajectory, Time T) {
  if (trajectory.num_experts() == 0) throw InvalidArgument("best_expert: no experts");
  ExpertId best = 0;
  for (ExpertId i = 1; i < trajectory.num_experts(); ++i) {
    if (trajectory.expert_loss(i, T) < trajectory.expert_loss(best, T)) best = i;
  }
  return best;
}

double per_round_regret(const Trajectory& trajectory, Time T) {
  return regret(trajectory, best_expert(trajectory, T), T) / static_cast<double>(T);
}

BoundReport regret_bound(Time T, ExpertId i, const Schedules& schedules,
                           const ExpertPool& pool, BoundVariant variant,
                           std::optional<double> delta) {
  if (T < 1) throw InvalidArgument("regret_bound: T must be >= 1");
  if (i >= pool.size()) throw InvalidArgument("regret_bound: unknown expert");
  BoundReport r;
  r.horizon = T;
  r.expert = i;
  r.variant = variant;
  r.delta = delta ? *delta : schedules.confidence(T);
  if (!(r.delta > 0.0 && r.delta <= 1.0)) {
    throw InvalidArgument("regret_bound: delta must lie in (0, 1]");
  }

  // Experts ordered by entering time so the running minimum weight over the
  // active set can be advanced in one pass.
  std::vector<std::pair<Time, double>> entries;
  for (const Expert& e : pool.experts()) entries.emplace_back(e.entering_time, e.weight);
  std::sort(entries.begin(), entries.end());
  std::size_t next = 0;
  double min_weight = 0.0;

  const Time tau = pool.expert(i).entering_time;
  CompensatedSum preentry, drift, exploration, sum_b_hat, sum_b_sq;
  for (Time t = 1; t <= T; ++t) {
    while (next < entries.size() && entries[next].first <= t) {
      const double w = entries[next].second;
      min_weight = min_weight == 0.0 ? w : std::min(min_weight, w);
      ++next;
    }
    const double b = schedules.loss_bound(t);
    const double gamma = schedules.exploration_rate(t);
    const double eta = schedules.learning_rate(t);
    const double b_hat = estimated_loss_bound(b, gamma, min_weight);
    if (t < tau) preentry.add(b_hat);
    drift.add(gamma * eta * b_hat * b_hat);
    exploration.add(gamma * b);
    sum_b_hat.add(b_hat);
    sum_b_sq.add(b * b);
  }

  const double log_term = 2.0 * std::log(4.0 / r.delta);
  r.complexity_term = (pool.expert(i).complexity + 1.0) / schedules.learning_rate(T);
  r.preentry_term = preentry.value();
  r.drift_term = drift.value();
  r.exploration_term = exploration.value();
  r.sum_b_hat = sum_b_hat.value();
  r.sum_b_squared = sum_b_sq.value();
  r.estimated_radical = std::sqrt(log_term * r.sum_b_hat);
  r.true_radical = std::sqrt(log_term * r.sum_b_squared);
  r.tail_term = 0.5 * r.delta * r.sum_b_hat;

  const double common =
      r.complexity_term + r.preentry_term + r.drift_term + r.exploration_term;
  r.total = variant == BoundVariant::kHighProbability
                ? common + r.estimated_radical + r.true_radical
                : common + r.estimated_radical + r.tail_term;
  return r;
}

UnbiasednessReport unbiasedness_validator(const ExpertPool& pool, Time t,
                                          double exploration_rate, double learning_rate,
                                          std::span<const double> losses, double loss_bound,
                                          std::size_t samples, std::uint64_t seed) {
  if (!(exploration_rate > 0.0 && exploration_rate <= 1.0)) {
    throw InvalidArgument("unbiasedness_validator: exploration rate must lie in (0, 1]");
  }
  if (samples < 100000) {
    throw InvalidArgument("unbiasedness_validator: need at least 1e5 samples");
  }
  check_losses(losses, pool, loss_bound);

  UnbiasednessReport report;
  report.t = t;
  report.samples = samples;
  report.exploration_rate = exploration_rate;
  report.b_hat = estimated_loss_bound(loss_bound, exploration_rate, pool.min_active_weight(t));
  const std::vector<double> prior = pool.finitized_prior(t);

  const std::size_t n = pool.size();
  std::vector<Moments> est(n), charge(n), fpl_charged(n);
  std::vector<std::size_t> fpl_counts(n, 0);
  RunStreams streams(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    StepDecision d;
    d.explored = streams.foe.uniform() < exploration_rate;
    if (d.explored) {
      d.chosen = sample_prior(prior, streams.foe.uniform());
      d.prior_probability = prior[d.chosen];
    }
    const double value = foe_estimate(d, losses[d.chosen], exploration_rate, report.b_hat);
    const PerturbationDraw draw = draw_perturbations(pool, t, streams.fpl);
    const ExpertId leader = fpl_select(pool, t, learning_rate, draw);
    ++fpl_counts[leader];
    for (ExpertId j = 0; j < n; ++j) {
      if (!pool.is_active(j, t)) continue;
      const bool charged = d.explored && d.chosen == j;
      const double x = charged ? value : 0.0;
      est[j].add(x);
      charge[j].add(charged ? 1.0 : 0.0);
      fpl_charged[j].add(leader == j ? x : 0.0);
    }
  }

  report.fpl_distribution.resize(n);
  for (ExpertId j = 0; j < n; ++j) {
    report.fpl_distribution[j] =
        static_cast<double>(fpl_counts[j]) / static_cast<double>(samples);
  }

  report.pass = true;
  for (ExpertId j = 0; j < n; ++j) {
    if (!pool.is_active(j, t)) continue;
    EstimateCheck c;
    c.expert = j;
    c.true_loss = losses[j];
    // Exhaustive cases: (r=0) -> 0; (r=1, u=k != j) -> 0;
    // (r=1, u=j) with probability gamma * u^j -> l^j / (u^j gamma), capped.
    const double p_charge = exploration_rate * prior[j];
    const double charged_value =
        std::min(losses[j] / (prior[j] * exploration_rate), report.b_hat);
    c.expected_estimate = p_charge * charged_value;
    c.expected_charge = p_charge;
    c.expected_fpl_charged = report.fpl_distribution[j] * c.expected_estimate;
    c.mean_estimate = est[j].mean();
    c.se_estimate = est[j].standard_error();
    c.charge_frequency = charge[j].mean();
    c.se_charge = charge[j].standard_error();
    c.fpl_charged_mean = fpl_charged[j].mean();
    c.se_fpl_charged = fpl_charged[j].standard_error();
    c.pass = within_3se(c.mean_estimate, c.expected_estimate, c.se_estimate) &&
             within_3se(c.charge_frequency, c.expected_charge, c.se_charge) &&
             within_3se(c.fpl_charged_mean, c.expected_fpl_charged, c.se_fpl_charged);
    report.pass = report.pass && c.pass;
    report.experts.push_back(c);
  }
  return report;
}

UnbiasednessReport unbiasedness_validator(const ExpertPool& pool, const Schedules& schedules,
                                          Time t, std::span<const double> losses,
                                          double loss_bound, std::size_t samples,
                                          std::uint64_t seed) {
  return unbiasedness_validator(pool, t, schedules.exploration_rate(t),
                                schedules.learning_rate(t), losses, loss_bound, samples, seed);
}

ExplorationReport exploration_mixture_check(const ExpertPool& pool, const Schedules& schedules,
                                            Time t, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("exploration_mixture_check: need trials >= 1");
  ExplorationReport r;
  r.t = t;
  r.trials = trials;
  r.expected_rate = schedules.exploration_rate(t);
  const double eta = schedules.learning_rate(t);
  std::size_t explored = 0;
  RunStreams streams(seed);
  for (std::size_t k = 0; k < trials; ++k) {
    if (foe_decide(pool, t, r.expected_rate, eta, streams).explored) ++explored;
  }
  r.observed_rate = static_cast<double>(explored) / static_cast<double>(trials);
  r.sigma = std::sqrt(r.expected_rate * (1.0 - r.expected_rate) / static_cast<double>(trials));
  r.pass = within_3se(r.observed_rate, r.expected_rate, r.sigma);
  return r;
}

FplGapReport fpl_ifpl_gap_check(const ExpertPool& pool, const Schedules& schedules, Time t,
                                std::span<const double> losses, double loss_bound,
                                std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw InvalidArgument("fpl_ifpl_gap_check: need samples >= 2");
  check_losses(losses, pool, loss_bound);
  FplGapReport r;
  r.t = t;
  r.samples = samples;
  r.learning_rate = schedules.learning_rate(t);
  const double gamma = schedules.exploration_rate(t);
  r.b_hat = estimated_loss_bound(loss_bound, gamma, pool.min_active_weight(t));
  r.factor = std::exp(r.learning_rate * r.b_hat);
  r.disagreement_bound = 1.0 - std::exp(-r.learning_rate * r.b_hat);
  const std::vector<double> prior = pool.finitized_prior(t);

  Moments fpl, ifpl, gap, disagree;
  std::vector<double> current(pool.size(), 0.0);
  RunStreams streams(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    std::fill(current.begin(), current.end(), 0.0);
    StepDecision d;
    d.explored = streams.foe.uniform() < gamma;
    if (d.explored) {
      d.chosen = sample_prior(prior, streams.foe.uniform());
      d.prior_probability = prior[d.chosen];
      current[d.chosen] = foe_estimate(d, losses[d.chosen], gamma, r.b_hat);
    }
    const PerturbationDraw draw = draw_perturbations(pool, t, streams.fpl);
    const ExpertId a = fpl_select(pool, t, r.learning_rate, draw);
    const ExpertId b = ifpl_select(pool, t, r.learning_rate, current, draw);
    fpl.add(current[a]);
    ifpl.add(current[b]);
    gap.add(current[a] - r.factor * current[b]);
    disagree.add(a != b ? 1.0 : 0.0);
  }
  r.mean_fpl = fpl.mean();
  r.mean_ifpl = ifpl.mean();
  r.gap_mean = gap.mean();
  r.gap_se = gap.standard_error();
  r.disagreement = disagree.mean();
  r.disagreement_se = disagree.standard_error();
  r.gap_pass = r.gap_mean <= 3.0 * r.gap_se;
  r.disagreement_pass = r.disagreement <= r.disagreement_bound + 3.0 * r.disagreement_se;
  return r;
}

EnvelopeReport martingale_envelope_check(std::span<const Trajectory> ensemble, double delta) {
  if (ensemble.size() < 30) {
    throw InvalidArgument("martingale_envelope_check: need at least 30 runs");
  }
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw InvalidArgument("martingale_envelope_check: delta must lie in (0, 1]");
  }
  const Time T = ensemble.front().length();
  if (T < 1) throw InvalidArgument("martingale_envelope_check: empty trajectory");
  for (const Trajectory& tr : ensemble) {
    if (tr.length() != T) throw InvalidArgument("martingale_envelope_check: lengths differ");
  }
  EnvelopeReport r;
  r.runs = ensemble.size();
  r.delta = delta;
  CompensatedSum sum_b_sq;
  for (const StepRecord& s : ensemble.front().steps()) sum_b_sq.add(s.loss_bound * s.loss_bound);
  r.envelope = std::sqrt(2.0 * std::log(4.0 / delta) * sum_b_sq.value());
  CompensatedSum total;
  for (const Trajectory& tr : ensemble) total.add(tr.foe_loss());
  r.ensemble_mean = total.value() / static_cast<double>(r.runs);
  for (const Trajectory& tr : ensemble) {
    if (tr.foe_loss() - r.ensemble_mean > r.envelope) ++r.violations;
  }
  r.violation_fraction = static_cast<double>(r.violations) / static_cast<double>(r.runs);
  const double p = delta / 2.0;
  r.allowed_fraction = p + 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(r.runs));
  r.pass = r.violation_fraction <= r.allowed_fraction;
  return r;
}

std::vector<Time> log_checkpoints(Time T) {
  std::vector<Time> points;
  for (Time decade = 1; decade <= T; decade *= 10) {
    for (Time m : {1, 2, 5}) {
      if (m * decade <= T) points.push_back(m * decade);
    }
    if (decade > T / 10) break;
  }
  if (T >= 1 && (points.empty() || points.back() != T)) points.push_back(T);
  return points;
}

std::vector<HannanPoint> hannan_series(const Trajectory& trajectory) {
  if (trajectory.length() == 0) throw InvalidArgument("hannan_series: empty trajectory");
  std::vector<HannanPoint> series;
  for (Time T : log_checkpoints(trajectory.length())) {
    series.push_back({T, per_round_regret(trajectory, T)});
  }
  return series;
}

nlohmann::json to_json(const BoundReport& r) {
  return {{"horizon", r.horizon},
          {"expert", r.expert},
          {"variant", variant_name(r.variant)},
          {"delta", r.delta},
          {"complexity_term", r.complexity_term},
          {"preentry_term", r.preentry_term},
          {"drift_term", r.drift_term},
          {"exploration_term", r.exploration_term},
          {"estimated_radical", r.estimated_radical},
          {"true_radical", r.true_radical},
          {"tail_term", r.tail_term},
          {"sum_b_hat", r.sum_b_hat},
          {"sum_b_squared", r.sum_b_squared},
          {"total", r.total}};
}

nlohmann::json to_json(const UnbiasednessReport& r) {
  nlohmann::json experts = nlohmann::json::array();
  for (const EstimateCheck& c : r.experts) {
    experts.push_back({{"expert", c.expert},
                       {"true_loss", c.true_loss},
                       {"mean_estimate", c.mean_estimate},
                       {"se_estimate", c.se_estimate},
                       {"expected_estimate", c.expected_estimate},
                       {"charge_frequency", c.charge_frequency},
                       {"expected_charge", c.expected_charge},
                       {"fpl_charged_mean", c.fpl_charged_mean},
                       {"expected_fpl_charged", c.expected_fpl_charged},
                       {"pass", c.pass}});
  }
  return {{"t", r.t},
          {"samples", r.samples},
          {"exploration_rate", r.exploration_rate},
          {"b_hat", r.b_hat},
          {"fpl_distribution", r.fpl_distribution},
          {"experts", experts},
          {"pass", r.pass}};
}

nlohmann::json to_json(const ExplorationReport& r) {
  return {{"t", r.t},
          {"trials", r.trials},
          {"expected_rate", r.expected_rate},
          {"observed_rate", r.observed_rate},
          {"sigma", r.sigma},
          {"pass", r.pass}};
}

nlohmann::json to_json(const FplGapReport& r) {
  return {{"t", r.t},
          {"samples", r.samples},
          {"learning_rate", r.learning_rate},
          {"b_hat", r.b_hat},
          {"factor", r.factor},
          {"mean_fpl", r.mean_fpl},
          {"mean_ifpl", r.mean_ifpl},
          {"gap_mean", r.gap_mean},
          {"gap_se", r.gap_se},
          {"disagreement", r.disagreement},
          {"disagreement_bound", r.disagreement_bound},
          {"gap_pass", r.gap_pass},
          {"disagreement_pass", r.disagreement_pass}};
}

nlohmann::json to_json(const EnvelopeReport& r) {
  return {{"runs", r.runs},
          {"delta", r.delta},
          {"envelope", r.envelope},
          {"ensemble_mean", r.ensemble_mean},
          {"violations", r.violations},
          {"violation_fraction", r.violation_fraction},
          {"allowed_fraction", r.allowed_fraction},
          {"pass", r.pass}};
}

nlohmann::json to_json(const std::vector<HannanPoint>& series) {
  nlohmann::json out = nlohmann::json::array();
  for (const HannanPoint& p : series) {
    out.push_back({{"T", p.T}, {"per_round_regret", p.per_round_regret}});
  }
  return out;
}

std::string to_text(const BoundReport& r) {
  std::ostringstream os;
  os.precision(6);
  os << "regret bound (" << variant_name(r.variant) << ") for expert " << r.expert
     << " at T = " << r.horizon << ", delta = " << r.delta << "\n"
     << "  complexity   " << r.complexity_term << "\n"
     << "  pre-entry    " << r.preentry_term << "\n"
     << "  drift        " << r.drift_term << "\n"
     << "  exploration  " << r.exploration_term << "\n"
     << "  radical(B^)  " << r.estimated_radical << "\n";
  if (r.variant == BoundVariant::kHighProbability) {
    os << "  radical(B^2) " << r.true_radical << "\n";
  } else {
    os << "  tail         " << r.tail_term << "\n";
  }
  os << "  total        " << r.total << "\n";
  return os.str();
}

}  // namespace foelab
