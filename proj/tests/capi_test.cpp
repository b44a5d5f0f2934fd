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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "foelab/foelab.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  foelab_string_free(s);
  return out;
}

TEST_CASE("version and scenarios") {
  CHECK(std::string(foelab_version()) == "0.1.0");
  char* names = nullptr;
  REQUIRE(foelab_list_scenarios(&names) == FOELAB_OK);
  const std::string list = take(names);
  CHECK(list.find("pd-titfortat\n") != std::string::npos);
  CHECK(list.find("adversarial-3\n") != std::string::npos);
}

TEST_CASE("error codes") {
  foelab_experiment* e = nullptr;
  CHECK(foelab_experiment_from_scenario("nope", &e) == FOELAB_CONFIG_ERROR);
  CHECK(std::string(foelab_last_error()).find("nope") != std::string::npos);
  CHECK(e == nullptr);
  CHECK(foelab_experiment_from_json("{not json", &e) == FOELAB_CONFIG_ERROR);
  const char* master_env =
      R"({"name":"x","mode":"tilde_foe","horizon":10,)"
      R"("environment":{"kind":"bernoulli","means":[0.5,0.4]}})";
  CHECK(foelab_experiment_from_json(master_env, &e) == FOELAB_CONFIG_ERROR);
  CHECK(foelab_experiment_from_file("/no/such/file.json", &e) == FOELAB_IO_ERROR);
  CHECK(foelab_experiment_from_json(nullptr, &e) == FOELAB_INVALID_ARGUMENT);

  foelab_schedule* s = nullptr;
  REQUIRE(foelab_schedule_create(nullptr, &s) == FOELAB_OK);
  double x = 0.0;
  CHECK(foelab_schedule_exploration_rate(s, 0, &x) == FOELAB_INVALID_ARGUMENT);
  foelab_schedule_free(s);
}

TEST_CASE("schedules through the C API") {
  foelab_schedule* s = nullptr;
  REQUIRE(foelab_schedule_create(R"({"entering_exponent":16,
      "loss_bound":{"regime":"power","exponent":"1/16","floor":true}})", &s) == FOELAB_OK);
  double v = 0.0;
  REQUIRE(foelab_schedule_exploration_rate(s, 16, &v) == FOELAB_OK);
  CHECK(std::abs(v - 0.5) < 1e-12);
  REQUIRE(foelab_schedule_learning_rate(s, 10000, &v) == FOELAB_OK);
  CHECK(std::abs(v - 0.001) < 1e-12);
  REQUIRE(foelab_schedule_loss_bound(s, 65536, &v) == FOELAB_OK);
  CHECK(v == 2.0);
  int64_t tau = 0;
  REQUIRE(foelab_schedule_entering_time(s, 0.25, 0.5, &tau) == FOELAB_OK);
  CHECK(tau == 65536);
  CHECK(foelab_schedule_entering_time(s, 0.75, 0.5, &tau) == FOELAB_INVALID_ARGUMENT);
  foelab_schedule_free(s);
}

TEST_CASE("pools and bounds") {
  foelab_schedule* s = nullptr;
  REQUIRE(foelab_schedule_create("", &s) == FOELAB_OK);
  const int lengths[] = {1, 2, 3, 3};
  foelab_pool* p = nullptr;
  REQUIRE(foelab_pool_from_code_lengths(lengths, 4, s, &p) == FOELAB_OK);
  CHECK(foelab_pool_size(p) == 4);
  double w = 0.0;
  int64_t tau = 0;
  size_t src = 0;
  REQUIRE(foelab_pool_expert(p, 1, &w, &tau, &src) == FOELAB_OK);
  CHECK(w == 0.25);
  CHECK(tau == 256);
  CHECK(src == 1);
  std::vector<double> prior(4);
  REQUIRE(foelab_pool_finitized_prior(p, 256, prior.data()) == FOELAB_OK);
  CHECK(std::abs(prior[0] - 2.0 / 3.0) < 1e-12);
  CHECK(prior[3] == 0.0);
  double bound = 0.0;
  REQUIRE(foelab_regret_bound(p, s, 1000, 0, 1, 0.0, &bound) == FOELAB_OK);
  CHECK(bound > 0.0);
  CHECK(foelab_regret_bound(p, s, 1000, 9, 1, 0.0, &bound) == FOELAB_INVALID_ARGUMENT);
  foelab_pool_free(p);

  const int bad[] = {1, 2, 2, 4};
  CHECK(foelab_pool_from_code_lengths(bad, 4, s, &p) == FOELAB_INVALID_ARGUMENT);
  const double weights[] = {0.5, 0.5};
  REQUIRE(foelab_pool_from_weights(weights, 2, s, &p) == FOELAB_OK);
  foelab_pool_free(p);
  foelab_schedule_free(s);
}

TEST_CASE("running an experiment") {
  foelab_experiment* e = nullptr;
  REQUIRE(foelab_experiment_from_scenario("adversarial-3", &e) == FOELAB_OK);
  const uint64_t seeds[] = {3, 4};
  REQUIRE(foelab_experiment_set_seeds(e, seeds, 2) == FOELAB_OK);
  REQUIRE(foelab_experiment_set_horizon(e, 300) == FOELAB_OK);
  CHECK(foelab_experiment_set_horizon(e, 0) == FOELAB_CONFIG_ERROR);
  const std::string dir = "capi_test_out";
  REQUIRE(foelab_experiment_set_output_dir(e, dir.c_str()) == FOELAB_OK);
  char* summary = nullptr;
  REQUIRE(foelab_experiment_run(e, &summary) == FOELAB_OK);
  CHECK(take(summary).find("adversarial-3") != std::string::npos);
  CHECK(foelab_experiment_file_count(e) == 6);
  char* path = nullptr;
  REQUIRE(foelab_experiment_file(e, 0, &path) == FOELAB_OK);
  CHECK(take(path).find("adversarial-3.seed3") != std::string::npos);
  char* config = nullptr;
  REQUIRE(foelab_experiment_config_json(e, &config) == FOELAB_OK);
  CHECK(take(config).find("\"horizon\": 300") != std::string::npos);
  foelab_experiment_free(e);
}

}  // namespace
