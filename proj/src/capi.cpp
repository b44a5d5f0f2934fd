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

#include "foelab/foelab.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "foelab/analysis.hpp"
#include "foelab/errors.hpp"
#include "foelab/experiment.hpp"
#include "foelab/expert_pool.hpp"
#include "foelab/schedules.hpp"

struct foelab_experiment {
  foelab::ExperimentConfig config;
  foelab::RunOptions options;
  std::vector<std::string> files;
};

struct foelab_schedule {
  foelab::Schedules schedules;
};

struct foelab_pool {
  foelab::ExpertPool pool;
};

namespace {

thread_local std::string last_error;

foelab_status fail(foelab_status code, const std::string& message) {
  last_error = message;
  return code;
}

// Maps the exception in flight to a status code.
foelab_status translate() {
  try {
    throw;
  } catch (const foelab::ConfigError& e) {
    return fail(FOELAB_CONFIG_ERROR, e.what());
  } catch (const foelab::ContractViolation& e) {
    return fail(FOELAB_CONTRACT_VIOLATION, e.what());
  } catch (const foelab::IoError& e) {
    return fail(FOELAB_IO_ERROR, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(FOELAB_CONFIG_ERROR, e.what());
  } catch (const foelab::InvalidArgument& e) {
    return fail(FOELAB_INVALID_ARGUMENT, e.what());
  } catch (const foelab::PoolError& e) {
    return fail(FOELAB_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FOELAB_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(FOELAB_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(FOELAB_INTERNAL_ERROR, "unknown error");
  }
}

template <typename F>
foelab_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return FOELAB_OK;
  } catch (...) {
    return translate();
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw foelab::InvalidArgument(what);
}

}  // namespace

extern "C" {

const char* foelab_version(void) { return foelab::kVersion; }

const char* foelab_last_error(void) { return last_error.c_str(); }

void foelab_string_free(char* s) { std::free(s); }

foelab_status foelab_list_scenarios(char** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    std::string names;
    for (const auto& c : foelab::builtin_scenarios()) names += c.name + "\n";
    *out = dup(names);
  });
}

foelab_status foelab_experiment_from_json(const char* json, foelab_experiment** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      throw foelab::ConfigError(std::string("malformed JSON: ") + e.what());
    }
    *out = new foelab_experiment{foelab::ExperimentConfig::from_json(doc), {}, {}};
  });
}

foelab_status foelab_experiment_from_file(const char* path, foelab_experiment** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    std::ifstream in(path);
    if (!in) throw foelab::IoError(std::string("cannot read ") + path);
    std::stringstream buf;
    buf << in.rdbuf();
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw foelab::ConfigError(std::string(path) + ": malformed JSON: " + e.what());
    }
    *out = new foelab_experiment{foelab::ExperimentConfig::from_json(doc), {}, {}};
  });
}

foelab_status foelab_experiment_from_scenario(const char* name, foelab_experiment** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    *out = new foelab_experiment{foelab::find_scenario(name), {}, {}};
  });
}

void foelab_experiment_free(foelab_experiment* e) { delete e; }

foelab_status foelab_experiment_set_seeds(foelab_experiment* e, const uint64_t* seeds,
                                          size_t count) {
  return guarded([&] {
    require(e != nullptr && seeds != nullptr, "null argument");
    if (count == 0) throw foelab::ConfigError("at least one seed is required");
    e->config.seeds.assign(seeds, seeds + count);
  });
}

foelab_status foelab_experiment_set_horizon(foelab_experiment* e, int64_t horizon) {
  return guarded([&] {
    require(e != nullptr, "null experiment");
    if (horizon < 1) throw foelab::ConfigError("horizon must be >= 1");
    e->config.horizon = horizon;
  });
}

foelab_status foelab_experiment_set_output_dir(foelab_experiment* e, const char* dir) {
  return guarded([&] {
    require(e != nullptr && dir != nullptr, "null argument");
    if (*dir == '\0') throw foelab::ConfigError("output directory must be nonempty");
    e->config.output_dir = dir;
  });
}

foelab_status foelab_experiment_set_summary_only(foelab_experiment* e, int flag) {
  return guarded([&] {
    require(e != nullptr, "null experiment");
    e->options.summary_only = flag != 0;
  });
}

foelab_status foelab_experiment_set_max_workers(foelab_experiment* e, unsigned workers) {
  return guarded([&] {
    require(e != nullptr, "null experiment");
    e->options.max_workers = workers;
  });
}

foelab_status foelab_experiment_config_json(const foelab_experiment* e, char** out) {
  return guarded([&] {
    require(e != nullptr && out != nullptr, "null argument");
    *out = dup(e->config.to_json().dump(2));
  });
}

foelab_status foelab_experiment_output_dir(const foelab_experiment* e, char** out) {
  return guarded([&] {
    require(e != nullptr && out != nullptr, "null argument");
    *out = dup(e->config.output_dir);
  });
}

foelab_status foelab_experiment_run(foelab_experiment* e, char** summary) {
  return guarded([&] {
    require(e != nullptr, "null experiment");
    e->files.clear();
    const auto result = foelab::run_experiment(e->config, e->options);
    e->files = result.files;
    if (summary) *summary = dup(result.summary_text());
  });
}

size_t foelab_experiment_file_count(const foelab_experiment* e) {
  return e ? e->files.size() : 0;
}

foelab_status foelab_experiment_file(const foelab_experiment* e, size_t index, char** out) {
  return guarded([&] {
    require(e != nullptr && out != nullptr, "null argument");
    require(index < e->files.size(), "file index out of range");
    *out = dup(e->files[index]);
  });
}

foelab_status foelab_schedule_create(const char* json, foelab_schedule** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    foelab::ScheduleConfig config;
    if (json != nullptr && *json != '\0') {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(json);
      } catch (const nlohmann::json::parse_error& e) {
        throw foelab::ConfigError(std::string("malformed JSON: ") + e.what());
      }
      config = foelab::schedule_from_json(doc);
    }
    *out = new foelab_schedule{foelab::Schedules(config)};
  });
}

void foelab_schedule_free(foelab_schedule* s) { delete s; }

foelab_status foelab_schedule_exploration_rate(const foelab_schedule* s, int64_t t,
                                               double* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = s->schedules.exploration_rate(t);
  });
}

foelab_status foelab_schedule_learning_rate(const foelab_schedule* s, int64_t t, double* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = s->schedules.learning_rate(t);
  });
}

foelab_status foelab_schedule_loss_bound(const foelab_schedule* s, int64_t t, double* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = s->schedules.loss_bound(t);
  });
}

foelab_status foelab_schedule_entering_time(const foelab_schedule* s, double weight,
                                            double max_weight, int64_t* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = s->schedules.entering_time(weight, max_weight);
  });
}

foelab_status foelab_pool_from_weights(const double* weights, size_t count,
                                       const foelab_schedule* s, foelab_pool** out) {
  return guarded([&] {
    require(weights != nullptr && s != nullptr && out != nullptr, "null argument");
    *out = new foelab_pool{
        foelab::ExpertPool::from_weights(std::span<const double>(weights, count), s->schedules)};
  });
}

foelab_status foelab_pool_from_code_lengths(const int* lengths, size_t count,
                                            const foelab_schedule* s, foelab_pool** out) {
  return guarded([&] {
    require(lengths != nullptr && s != nullptr && out != nullptr, "null argument");
    *out = new foelab_pool{
        foelab::ExpertPool::from_code_lengths(std::span<const int>(lengths, count), s->schedules)};
  });
}

void foelab_pool_free(foelab_pool* p) { delete p; }

size_t foelab_pool_size(const foelab_pool* p) { return p ? p->pool.size() : 0; }

foelab_status foelab_pool_expert(const foelab_pool* p, size_t id, double* weight,
                                 int64_t* entering_time, size_t* source_index) {
  return guarded([&] {
    require(p != nullptr, "null pool");
    require(id < p->pool.size(), "expert id out of range");
    const foelab::Expert& e = p->pool.expert(id);
    if (weight) *weight = e.weight;
    if (entering_time) *entering_time = e.entering_time;
    if (source_index) *source_index = e.source_index;
  });
}

foelab_status foelab_pool_finitized_prior(const foelab_pool* p, int64_t t, double* out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const auto prior = p->pool.finitized_prior(t);
    std::copy(prior.begin(), prior.end(), out);
  });
}

foelab_status foelab_regret_bound(const foelab_pool* p, const foelab_schedule* s, int64_t T,
                                  size_t i, int variant, double delta, double* out) {
  return guarded([&] {
    require(p != nullptr && s != nullptr && out != nullptr, "null argument");
    require(variant == 0 || variant == 1, "variant must be 0 or 1");
    require(i < p->pool.size(), "expert id out of range");
    const auto v = variant == 0 ? foelab::BoundVariant::kHighProbability
                                : foelab::BoundVariant::kExpectation;
    std::optional<double> d;
    if (delta > 0.0) d = delta;
    *out = foelab::regret_bound(T, i, s->schedules, p->pool, v, d).total;
  });
}

}  // extern "C"
