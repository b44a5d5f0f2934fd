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

#include "foelab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "foelab/errors.hpp"
#include "foelab/games.hpp"
#include "foelab/random.hpp"

namespace foelab {
namespace {

using nlohmann::json;

constexpr const char* kMasterKinds[] = {"oblivious_table", "bernoulli", "phased_adversary",
                                        "constant"};
constexpr const char* kBasicKinds[] = {"pd_tit_for_tat", "chicken", "heaven_hell",
                                       "heaven_hell_variant"};

template <typename Range>
bool contains(const Range& range, const std::string& value) {
  return std::find(std::begin(range), std::end(range), value) != std::end(range);
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Rational parse_rational(const json& v, const char* field) {
  try {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number()) return Rational::from_double(v.get<double>());
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string(field) + ": " + e.what());
  }
  throw ConfigError(std::string(field) + " must be a number or a \"p/q\" string");
}

template <typename T>
T get_field(const json& obj, const char* key, const char* where) {
  if (!obj.contains(key)) throw ConfigError(std::string(where) + ": missing \"" + key + "\"");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(where) + ": field \"" + key + "\" has the wrong type");
  }
}

LossMatrix parse_matrix(const json& env, LossMatrix fallback) {
  if (!env.contains("matrix")) return fallback;
  const json& m = env.at("matrix");
  if (!m.is_object()) throw ConfigError("environment.matrix must be an object {cc, cd, dc, dd}");
  LossMatrix out{};
  out[kCooperate][kCooperate] = get_field<double>(m, "cc", "environment.matrix");
  out[kCooperate][kDefect] = get_field<double>(m, "cd", "environment.matrix");
  out[kDefect][kCooperate] = get_field<double>(m, "dc", "environment.matrix");
  out[kDefect][kDefect] = get_field<double>(m, "dd", "environment.matrix");
  return out;
}

json matrix_json(const LossMatrix& m) {
  return {{"cc", m[kCooperate][kCooperate]},
          {"cd", m[kCooperate][kDefect]},
          {"dc", m[kDefect][kCooperate]},
          {"dd", m[kDefect][kDefect]}};
}

json schedule_json(const ScheduleConfig& s) {
  json bound = {{"regime", s.loss_bound_regime == LossBoundRegime::kPower ? "power" : "constant_one"}};
  if (s.loss_bound_regime == LossBoundRegime::kPower) {
    bound["exponent"] = s.loss_bound_exponent.str();
    bound["floor"] = s.floor_loss_bound;
  }
  return {{"exploration_exponent", s.exploration_exponent.str()},
          {"learning_exponent", s.learning_exponent.str()},
          {"entering_exponent", s.entering_exponent},
          {"loss_bound", bound},
          {"confidence_exponent", s.confidence_exponent.str()}};
}

}  // namespace

ScheduleConfig schedule_from_json(const json& j) {
  ScheduleConfig s;
  if (!j.is_object()) throw ConfigError("schedule must be an object");
  if (j.contains("exploration_exponent")) {
    s.exploration_exponent = parse_rational(j.at("exploration_exponent"), "exploration_exponent");
  }
  if (j.contains("learning_exponent")) {
    s.learning_exponent = parse_rational(j.at("learning_exponent"), "learning_exponent");
  }
  if (j.contains("entering_exponent")) {
    s.entering_exponent = get_field<int>(j, "entering_exponent", "schedule");
  }
  if (j.contains("confidence_exponent")) {
    s.confidence_exponent = parse_rational(j.at("confidence_exponent"), "confidence_exponent");
  }
  if (j.contains("loss_bound")) {
    const json& b = j.at("loss_bound");
    const auto regime = get_field<std::string>(b, "regime", "schedule.loss_bound");
    if (regime == "constant_one") {
      s.loss_bound_regime = LossBoundRegime::kConstantOne;
    } else if (regime == "power") {
      s.loss_bound_regime = LossBoundRegime::kPower;
      if (b.contains("exponent")) {
        s.loss_bound_exponent = parse_rational(b.at("exponent"), "loss_bound.exponent");
      }
      if (b.contains("floor")) s.floor_loss_bound = get_field<bool>(b, "floor", "schedule.loss_bound");
    } else {
      throw ConfigError("schedule.loss_bound.regime must be constant_one or power");
    }
  }
  try {
    s.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("schedule: ") + e.what());
  }
  return s;
}

namespace {

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::uint64_t count) {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = first; s < first + count; ++s) seeds.push_back(s);
  return seeds;
}

std::unique_ptr<Environment> build_master_environment(const ExperimentConfig& c,
                                                      const Schedules& schedules,
                                                      std::uint64_t seed) {
  const json& env = c.environment;
  const auto kind = env.at("kind").get<std::string>();
  if (kind == "oblivious_table") {
    return make_oblivious_table(env.at("table").get<std::vector<std::vector<double>>>(),
                                schedules);
  }
  if (kind == "bernoulli") {
    return make_bernoulli(env.at("means").get<std::vector<double>>(), seed, schedules);
  }
  if (kind == "phased_adversary") {
    return make_phased_adversary(env.at("experts").get<std::size_t>(), schedules);
  }
  return make_constant(env.at("experts").get<std::size_t>(), env.value("loss", 0.0), schedules);
}

std::unique_ptr<RepeatedGame> build_game(const ExperimentConfig& c) {
  const json& env = c.environment;
  const auto kind = env.at("kind").get<std::string>();
  if (kind == "pd_tit_for_tat") return make_pd_tit_for_tat(parse_matrix(env, default_pd_matrix()));
  if (kind == "chicken") {
    return make_chicken(env.value("threshold", std::int64_t{3}),
                        parse_matrix(env, default_chicken_matrix()));
  }
  if (kind == "heaven_hell") return make_heaven_hell();
  return make_heaven_hell_variant();
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

bool ExperimentConfig::basic_scale() const {
  return environment.contains("kind") && environment.at("kind").is_string() &&
         contains(kBasicKinds, environment.at("kind").get<std::string>());
}

std::size_t ExperimentConfig::num_experts() const {
  if (basic_scale()) return experts.size();
  const auto kind = environment.at("kind").get<std::string>();
  if (kind == "oblivious_table") {
    const json& table = environment.at("table");
    return table.empty() ? 0 : table.at(0).size();
  }
  if (kind == "bernoulli") return environment.at("means").size();
  return environment.at("experts").get<std::size_t>();
}

Schedules ExperimentConfig::schedules() const {
  ScheduleConfig s = schedule;
  if (mode == RunMode::kTildeFoe) s.floor_loss_bound = true;
  return Schedules(s);
}

void ExperimentConfig::validate() const {
  if (name.empty()) throw ConfigError("name must be nonempty");
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (seeds.empty()) throw ConfigError("seeds must be nonempty");
  if (!environment.is_object() || !environment.contains("kind") ||
      !environment.at("kind").is_string()) {
    throw ConfigError("environment.kind is required");
  }
  const auto kind = environment.at("kind").get<std::string>();
  const bool basic = contains(kBasicKinds, kind);
  if (!basic && !contains(kMasterKinds, kind)) {
    throw ConfigError("unknown environment kind \"" + kind + "\"");
  }
  if (mode == RunMode::kTildeFoe && !basic) {
    throw ConfigError("mode tilde_foe requires a basic-scale environment, got \"" + kind + "\"");
  }
  if (mode == RunMode::kFoe && basic &&
      schedule.loss_bound_regime != LossBoundRegime::kConstantOne) {
    throw ConfigError("mode foe on a repeated game plays one basic step per master step; "
                      "use loss_bound regime constant_one or mode tilde_foe");
  }
  try {
    schedule.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("schedule: ") + e.what());
  }
  try {
    if (basic) {
      if (experts.empty()) throw ConfigError("experts: a repeated game needs at least one strategy");
      for (const auto& e : experts) find_strategy(e);
    } else {
      if (!experts.empty()) throw ConfigError("experts: only used with repeated games");
      if (kind == "oblivious_table" && !environment.contains("table")) {
        throw ConfigError("oblivious_table needs \"table\"");
      }
      if (kind == "bernoulli" && !environment.contains("means")) {
        throw ConfigError("bernoulli needs \"means\"");
      }
      if ((kind == "phased_adversary" || kind == "constant") && !environment.contains("experts")) {
        throw ConfigError(kind + " needs \"experts\"");
      }
    }
    if (num_experts() == 0) throw ConfigError("environment has no experts");
    // Builds once to surface parameter errors (ranges, PD ordering, Kraft).
    const Schedules s = schedules();
    build_pool(*this);
    if (basic) {
      build_game(*this);
    } else {
      build_master_environment(*this, s, seeds.front());
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("environment: ") + e.what());
  }
}

ExperimentConfig ExperimentConfig::from_json(const json& doc_in) {
  if (!doc_in.is_object()) throw ConfigError("configuration must be a JSON object");
  const json& doc = doc_in.contains("config") && doc_in.at("config").is_object()
                        ? doc_in.at("config")
                        : doc_in;
  ExperimentConfig c;
  if (doc.contains("name")) c.name = get_field<std::string>(doc, "name", "config");
  const auto mode = doc.value("mode", std::string("foe"));
  if (mode == "foe") {
    c.mode = RunMode::kFoe;
  } else if (mode == "tilde_foe") {
    c.mode = RunMode::kTildeFoe;
  } else {
    throw ConfigError("mode must be \"foe\" or \"tilde_foe\"");
  }
  c.horizon = get_field<Time>(doc, "horizon", "config");
  if (doc.contains("seeds")) c.seeds = get_field<std::vector<std::uint64_t>>(doc, "seeds", "config");
  if (doc.contains("output_dir")) c.output_dir = get_field<std::string>(doc, "output_dir", "config");
  if (!doc.contains("environment")) throw ConfigError("config: missing \"environment\"");
  c.environment = doc.at("environment");
  if (doc.contains("experts")) c.experts = get_field<std::vector<std::string>>(doc, "experts", "config");
  if (doc.contains("prior")) {
    const json& p = doc.at("prior");
    c.prior.kind = get_field<std::string>(p, "kind", "prior");
    if (p.contains("code_lengths")) c.prior.code_lengths = get_field<std::vector<int>>(p, "code_lengths", "prior");
    if (p.contains("weights")) c.prior.weights = get_field<std::vector<double>>(p, "weights", "prior");
  }
  if (doc.contains("schedule")) c.schedule = schedule_from_json(doc.at("schedule"));
  c.validate();
  return c;
}

json ExperimentConfig::to_json() const {
  json prior_json = {{"kind", prior.kind}};
  if (!prior.code_lengths.empty()) prior_json["code_lengths"] = prior.code_lengths;
  if (!prior.weights.empty()) prior_json["weights"] = prior.weights;
  json doc = {{"name", name},
              {"mode", mode == RunMode::kTildeFoe ? "tilde_foe" : "foe"},
              {"horizon", horizon},
              {"seeds", seeds},
              {"output_dir", output_dir},
              {"environment", environment},
              {"prior", prior_json},
              {"schedule", schedule_json(schedule)}};
  if (!experts.empty()) doc["experts"] = experts;
  return doc;
}

std::string config_hash(const ExperimentConfig& config) {
  json doc = config.to_json();
  // The output location does not change results.
  doc.erase("output_dir");
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a64(doc.dump()));
  return buf;
}

std::vector<ExperimentConfig> builtin_scenarios() {
  std::vector<ExperimentConfig> out;
  const auto ten = seed_range(1, 10);

  ExperimentConfig pd;
  pd.name = "pd-titfortat";
  pd.mode = RunMode::kTildeFoe;
  pd.horizon = 200000;
  pd.seeds = ten;
  pd.environment = {{"kind", "pd_tit_for_tat"}, {"matrix", matrix_json(default_pd_matrix())}};
  pd.experts = {"always_cooperate", "always_defect"};
  pd.schedule = reactive_schedule();
  out.push_back(pd);

  ExperimentConfig flat = pd;
  flat.name = "pd-titfortat-flat";
  flat.mode = RunMode::kFoe;
  flat.schedule = bounded_loss_schedule();
  out.push_back(flat);

  ExperimentConfig chicken;
  chicken.name = "chicken-primitive";
  chicken.mode = RunMode::kTildeFoe;
  chicken.horizon = 200000;
  chicken.seeds = ten;
  chicken.environment = {{"kind", "chicken"},
                         {"threshold", 3},
                         {"matrix", matrix_json(default_chicken_matrix())}};
  chicken.experts = {"always_defect", "always_cooperate"};
  chicken.schedule = reactive_schedule();
  out.push_back(chicken);

  ExperimentConfig hh;
  hh.name = "heaven-hell";
  hh.mode = RunMode::kTildeFoe;
  hh.horizon = 100000;
  hh.seeds = ten;
  hh.environment = {{"kind", "heaven_hell"}};
  hh.experts = {"pray", "curse"};
  hh.schedule = reactive_schedule();
  out.push_back(hh);

  ExperimentConfig hhv = hh;
  hhv.name = "heaven-hell-variant";
  hhv.environment = {{"kind", "heaven_hell_variant"}};
  out.push_back(hhv);

  ExperimentConfig iid;
  iid.name = "iid-bandit-10";
  iid.mode = RunMode::kFoe;
  iid.horizon = 100000;
  iid.seeds = ten;
  std::vector<double> means;
  for (int i = 0; i < 10; ++i) means.push_back(0.3 + 0.05 * i);
  iid.environment = {{"kind", "bernoulli"}, {"means", means}};
  iid.schedule = bounded_loss_schedule();
  out.push_back(iid);

  ExperimentConfig adv;
  adv.name = "adversarial-3";
  adv.mode = RunMode::kFoe;
  adv.horizon = 10000;
  adv.seeds = seed_range(1, 20);
  adv.environment = {{"kind", "phased_adversary"}, {"experts", 3}};
  adv.schedule = bounded_loss_schedule();
  out.push_back(adv);

  return out;
}

ExperimentConfig find_scenario(const std::string& name) {
  for (auto& c : builtin_scenarios()) {
    if (c.name == name) return c;
  }
  throw ConfigError("unknown scenario \"" + name + "\"");
}

ExpertPool build_pool(const ExperimentConfig& config, std::vector<std::string>* names) {
  const Schedules schedules = config.schedules();
  const std::size_t n = config.num_experts();
  std::vector<std::string> labels;
  if (config.basic_scale()) {
    labels = config.experts;
  } else {
    for (std::size_t i = 0; i < n; ++i) labels.push_back("arm" + std::to_string(i));
  }

  const PriorSpec& prior = config.prior;
  std::optional<ExpertPool> pool;
  try {
    if (prior.kind == "uniform") {
      pool = ExpertPool::from_weights(std::vector<double>(n, 1.0 / static_cast<double>(n)),
                                      schedules, labels);
    } else if (prior.kind == "program") {
      std::vector<int> lengths = prior.code_lengths;
      if (lengths.empty()) {
        if (!config.basic_scale()) throw ConfigError("program prior needs code_lengths");
        for (const auto& e : config.experts) lengths.push_back(find_strategy(e).code_length);
      }
      if (lengths.size() != n) throw ConfigError("code_lengths must match the number of experts");
      pool = ExpertPool::from_code_lengths(lengths, schedules, labels);
    } else if (prior.kind == "weights") {
      if (prior.weights.size() != n) throw ConfigError("weights must match the number of experts");
      pool = ExpertPool::from_weights(prior.weights, schedules, labels);
    } else {
      throw ConfigError("prior.kind must be uniform, program or weights");
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("prior: ") + e.what());
  }
  if (names) {
    names->clear();
    for (const Expert& e : pool->experts()) names->push_back(e.name);
  }
  return *pool;
}

SeedRun run_seed(const ExperimentConfig& config, std::uint64_t seed) {
  const Schedules schedules = config.schedules();
  SeedRun run;
  run.seed = seed;
  ExpertPool pool = build_pool(config, &run.expert_names);
  if (config.basic_scale()) {
    // Strategies follow the pool's weight ordering.
    std::vector<std::shared_ptr<const Strategy>> strategies;
    for (const Expert& e : pool.experts()) {
      strategies.push_back(find_strategy(config.experts[e.source_index]).strategy);
    }
    BlockEnvironment env(build_game(config), std::move(strategies), schedules, config.horizon);
    const auto kind = config.environment.at("kind").get<std::string>();
    run.matrix_game = kind == "pd_tit_for_tat" || kind == "chicken";
    run.basic = run_tilde_foe(std::move(pool), env, schedules, seed);
    run.master = run.basic->master;
    run.audit_ok = run.basic->bandit_audit_ok;
  } else {
    auto env = build_master_environment(config, schedules, seed);
    run.master = run_foe(std::move(pool), *env, config.horizon, schedules, seed);
    run.audit_ok = env->one_reveal_per_step();
  }
  return run;
}

SeedSummary summarize(const SeedRun& run) {
  SeedSummary s;
  const Trajectory& tr = run.master;
  s.seed = run.seed;
  s.master_steps = tr.length();
  s.foe_loss = tr.foe_loss();
  s.best_expert = best_expert(tr, tr.length());
  s.regret_vs_best = regret(tr, s.best_expert);
  s.per_round_regret = s.regret_vs_best / static_cast<double>(tr.length());
  s.audit_ok = run.audit_ok;
  s.hannan = hannan_series(tr);
  for (const StepRecord& r : tr.steps()) s.explorations += r.explored ? 1 : 0;

  if (run.basic) {
    const auto& steps = run.basic->basic_steps;
    s.basic_steps = static_cast<Time>(steps.size());
    const std::size_t from = steps.size() - std::max<std::size_t>(1, steps.size() / 10);
    double loss = 0.0;
    std::size_t defects = 0;
    for (std::size_t k = from; k < steps.size(); ++k) {
      loss += steps[k].loss;
      defects += steps[k].action == kDefect ? 1 : 0;
    }
    const double n = static_cast<double>(steps.size() - from);
    s.final_tenth_mean_loss = loss / n;
    if (run.matrix_game) s.final_tenth_defect_rate = static_cast<double>(defects) / n;
  } else {
    s.basic_steps = tr.length();
    const Time from = tr.length() - std::max<Time>(1, tr.length() / 10);
    const double before = from > 0 ? tr.foe_loss(from) : 0.0;
    s.final_tenth_mean_loss = (tr.foe_loss() - before) / static_cast<double>(tr.length() - from);
  }
  return s;
}

std::string trajectory_jsonl(const SeedRun& run) {
  std::string out;
  const auto& steps = run.master.steps();
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const StepRecord& r = steps[k];
    out += "{\"t\":" + std::to_string(r.t);
    out += ",\"explored\":";
    out += r.explored ? "true" : "false";
    out += ",\"chosen\":" + std::to_string(r.chosen);
    out += ",\"true_loss\":" + fmt17(r.true_loss);
    out += ",\"est_loss_assigned\":" + fmt17(r.est_loss_assigned);
    out += ",\"active_count\":" + std::to_string(r.active_count);
    out += ",\"b_hat\":" + fmt17(r.b_hat);
    out += ",\"loss_bound\":" + fmt17(r.loss_bound);
    if (run.basic) {
      const Time start = run.basic->block_starts[k];
      const std::int64_t len = run.basic->block_lengths[k];
      out += ",\"block_start\":" + std::to_string(start);
      out += ",\"block_length\":" + std::to_string(len);
      std::string actions, observations, losses;
      for (std::int64_t j = 0; j < len; ++j) {
        const BasicStep& b = run.basic->basic_steps[static_cast<std::size_t>(start - 1 + j)];
        const char* sep = j == 0 ? "" : ",";
        actions += sep + std::to_string(b.action);
        observations += sep + std::to_string(b.observation);
        losses += sep + fmt17(b.loss);
      }
      out += ",\"actions\":[" + actions + "]";
      out += ",\"observations\":[" + observations + "]";
      out += ",\"basic_losses\":[" + losses + "]";
    }
    out += "}\n";
  }
  return out;
}

std::string summary_csv(const SeedRun& run) {
  const Trajectory& tr = run.master;
  const std::size_t n = tr.num_experts();
  std::string out = "t,cumulative_foe_loss";
  for (std::size_t i = 0; i < n; ++i) out += ",expert_" + std::to_string(i) + "_cum_loss";
  out += ",regret_vs_best";
  if (run.basic) out += ",block_start,block_length,controlling_expert,block_loss,avg_basic_loss";
  out += "\n";
  for (Time t = 1; t <= tr.length(); ++t) {
    const std::size_t k = static_cast<std::size_t>(t - 1);
    out += std::to_string(t) + "," + fmt17(tr.foe_loss(t));
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = tr.expert_loss(i, t);
      best = i == 0 ? v : std::min(best, v);
      out += "," + fmt17(v);
    }
    out += "," + fmt17(tr.foe_loss(t) - best);
    if (run.basic) {
      const Time start = run.basic->block_starts[k];
      const std::int64_t len = run.basic->block_lengths[k];
      const double played = static_cast<double>(start - 1 + len);
      out += "," + std::to_string(start) + "," + std::to_string(len) + "," +
             std::to_string(tr.steps()[k].chosen) + "," + fmt17(tr.steps()[k].true_loss) + "," +
             fmt17(tr.foe_loss(t) / played);
    }
    out += "\n";
  }
  return out;
}

std::string aggregate_csv(const std::vector<SeedSummary>& seeds) {
  std::string out =
      "T,seeds,mean_regret,median_regret,mean_per_round_regret,median_per_round_regret,"
      "min_per_round_regret,max_per_round_regret\n";
  if (seeds.empty()) return out;
  // Checkpoints shared by every seed.
  std::vector<Time> checkpoints;
  for (const HannanPoint& p : seeds.front().hannan) {
    const bool everywhere = std::all_of(seeds.begin(), seeds.end(), [&](const SeedSummary& s) {
      return std::any_of(s.hannan.begin(), s.hannan.end(),
                         [&](const HannanPoint& q) { return q.T == p.T; });
    });
    if (everywhere) checkpoints.push_back(p.T);
  }
  for (Time T : checkpoints) {
    std::vector<double> per_round;
    for (const SeedSummary& s : seeds) {
      for (const HannanPoint& q : s.hannan) {
        if (q.T == T) per_round.push_back(q.per_round_regret);
      }
    }
    double sum = 0.0;
    for (double v : per_round) sum += v;
    const double mean = sum / static_cast<double>(per_round.size());
    const double med = median(per_round);
    const auto [lo, hi] = std::minmax_element(per_round.begin(), per_round.end());
    const double scale = static_cast<double>(T);
    out += std::to_string(T) + "," + std::to_string(per_round.size()) + "," +
           fmt17(mean * scale) + "," + fmt17(med * scale) + "," + fmt17(mean) + "," +
           fmt17(med) + "," + fmt17(*lo) + "," + fmt17(*hi) + "\n";
  }
  return out;
}

std::string ExperimentResult::summary_text() const {
  std::ostringstream os;
  os << "experiment " << config.name << " ("
     << (config.mode == RunMode::kTildeFoe ? "tilde_foe" : "foe") << ", horizon "
     << config.horizon << ", " << seeds.size() << " seed" << (seeds.size() == 1 ? "" : "s")
     << ", config " << config_hash << ")\n";
  char line[256];
  std::snprintf(line, sizeof line, "%8s %10s %12s %6s %12s %12s %12s %8s %6s\n", "seed", "master_T",
                "foe_loss", "best", "regret", "per_round", "final10_loss", "defect10", "audit");
  os << line;
  for (const SeedSummary& s : seeds) {
    char defect[32] = "-";
    if (s.final_tenth_defect_rate) std::snprintf(defect, sizeof defect, "%.4f", *s.final_tenth_defect_rate);
    std::snprintf(line, sizeof line, "%8" PRIu64 " %10" PRId64 " %12.4f %6zu %12.4f %12.6f %12.4f %8s %6s\n",
                  s.seed, s.master_steps, s.foe_loss, s.best_expert, s.regret_vs_best,
                  s.per_round_regret, s.final_tenth_mean_loss, defect, s.audit_ok ? "ok" : "FAIL");
    os << line;
  }
  return os.str();
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  result.config_hash = config_hash(config);

  namespace fs = std::filesystem;
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  const std::size_t n = config.seeds.size();
  unsigned workers = options.max_workers ? options.max_workers
                                         : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));

  std::vector<SeedSummary> summaries(n);
  std::vector<std::vector<std::string>> files(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        const std::uint64_t seed = config.seeds[k];
        const SeedRun run = run_seed(config, seed);
        summaries[k] = summarize(run);
        if (!options.summary_only) {
          const std::string stem = config.name + ".seed" + std::to_string(seed);
          const fs::path jsonl = dir / (stem + ".jsonl");
          const fs::path csv = dir / (stem + ".csv");
          write_atomically(jsonl, trajectory_jsonl(run));
          write_atomically(csv, summary_csv(run));
          files[k] = {jsonl.string(), csv.string()};
        }
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  result.seeds = std::move(summaries);
  for (auto& f : files) result.files.insert(result.files.end(), f.begin(), f.end());

  const fs::path aggregate = dir / (config.name + ".aggregate.csv");
  write_atomically(aggregate, aggregate_csv(result.seeds));
  result.files.push_back(aggregate.string());

  const fs::path manifest_path = dir / (config.name + ".manifest.json");
  json manifest = {{"tool", "foelab"},
                   {"version", kVersion},
                   {"config_hash", result.config_hash},
                   {"config", config.to_json()},
                   {"summary_only", options.summary_only},
                   {"outputs", result.files}};
  write_atomically(manifest_path, manifest.dump(2) + "\n");
  result.files.push_back(manifest_path.string());
  return result;
}

}  // namespace foelab
