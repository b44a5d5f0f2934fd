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

// C interface to foelab. All objects are opaque handles; functions return a
// foelab_status and leave details in foelab_last_error() on failure.
// Strings returned through char** are owned by the caller and released with
// foelab_string_free().

#ifndef FOELAB_FOELAB_H_
#define FOELAB_FOELAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(FOELAB_BUILDING_LIBRARY)
#define FOELAB_API __attribute__((visibility("default")))
#else
#define FOELAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum foelab_status {
  FOELAB_OK = 0,
  FOELAB_INVALID_ARGUMENT = 1,
  FOELAB_CONFIG_ERROR = 2,
  FOELAB_CONTRACT_VIOLATION = 3,
  FOELAB_IO_ERROR = 4,
  FOELAB_INTERNAL_ERROR = 5
} foelab_status;

typedef struct foelab_experiment foelab_experiment;
typedef struct foelab_schedule foelab_schedule;
typedef struct foelab_pool foelab_pool;

FOELAB_API const char* foelab_version(void);
// Message for the last failure on this thread; empty if none.
FOELAB_API const char* foelab_last_error(void);
FOELAB_API void foelab_string_free(char* s);

// Newline-separated names of the built-in scenarios.
FOELAB_API foelab_status foelab_list_scenarios(char** out);

// ---- experiments ----
FOELAB_API foelab_status foelab_experiment_from_json(const char* json, foelab_experiment** out);
FOELAB_API foelab_status foelab_experiment_from_file(const char* path, foelab_experiment** out);
FOELAB_API foelab_status foelab_experiment_from_scenario(const char* name,
                                                         foelab_experiment** out);
FOELAB_API void foelab_experiment_free(foelab_experiment* e);

FOELAB_API foelab_status foelab_experiment_set_seeds(foelab_experiment* e,
                                                     const uint64_t* seeds, size_t count);
FOELAB_API foelab_status foelab_experiment_set_horizon(foelab_experiment* e, int64_t horizon);
FOELAB_API foelab_status foelab_experiment_set_output_dir(foelab_experiment* e, const char* dir);
FOELAB_API foelab_status foelab_experiment_set_summary_only(foelab_experiment* e, int flag);
FOELAB_API foelab_status foelab_experiment_set_max_workers(foelab_experiment* e,
                                                           unsigned workers);
FOELAB_API foelab_status foelab_experiment_config_json(const foelab_experiment* e, char** out);
FOELAB_API foelab_status foelab_experiment_output_dir(const foelab_experiment* e, char** out);

// Runs every seed and writes the output files. *summary receives a text
// table (may be NULL).
FOELAB_API foelab_status foelab_experiment_run(foelab_experiment* e, char** summary);
// Number of files written by the last successful run, and their paths.
FOELAB_API size_t foelab_experiment_file_count(const foelab_experiment* e);
FOELAB_API foelab_status foelab_experiment_file(const foelab_experiment* e, size_t index,
                                                char** out);

// ---- schedules ----
// JSON object with the same keys as a config's "schedule"; NULL or "" for
// the defaults.
FOELAB_API foelab_status foelab_schedule_create(const char* json, foelab_schedule** out);
FOELAB_API void foelab_schedule_free(foelab_schedule* s);
FOELAB_API foelab_status foelab_schedule_exploration_rate(const foelab_schedule* s, int64_t t,
                                                          double* out);
FOELAB_API foelab_status foelab_schedule_learning_rate(const foelab_schedule* s, int64_t t,
                                                       double* out);
FOELAB_API foelab_status foelab_schedule_loss_bound(const foelab_schedule* s, int64_t t,
                                                    double* out);
FOELAB_API foelab_status foelab_schedule_entering_time(const foelab_schedule* s, double weight,
                                                       double max_weight, int64_t* out);

// ---- expert pools ----
FOELAB_API foelab_status foelab_pool_from_weights(const double* weights, size_t count,
                                                  const foelab_schedule* s, foelab_pool** out);
FOELAB_API foelab_status foelab_pool_from_code_lengths(const int* lengths, size_t count,
                                                       const foelab_schedule* s,
                                                       foelab_pool** out);
FOELAB_API void foelab_pool_free(foelab_pool* p);
FOELAB_API size_t foelab_pool_size(const foelab_pool* p);
// Expert index is the pool id (nonincreasing weight order).
FOELAB_API foelab_status foelab_pool_expert(const foelab_pool* p, size_t id, double* weight,
                                            int64_t* entering_time, size_t* source_index);
// Writes foelab_pool_size() probabilities; inactive experts get 0.
FOELAB_API foelab_status foelab_pool_finitized_prior(const foelab_pool* p, int64_t t,
                                                     double* out);

// Regret bound for a horizon T against expert id i. variant 0 = high
// probability, 1 = expectation. delta <= 0 uses the schedule's T^-c.
FOELAB_API foelab_status foelab_regret_bound(const foelab_pool* p, const foelab_schedule* s,
                                             int64_t T, size_t i, int variant, double delta,
                                             double* out);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // FOELAB_FOELAB_H_
