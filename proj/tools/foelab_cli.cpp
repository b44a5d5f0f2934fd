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

// foe-lab: runs FoE experiments from a JSON config or a built-in scenario.
//
//   foe-lab --scenario pd-titfortat --seeds 1-10 --out results/
//   foe-lab --config exp.json --summary-only
//
// Exit codes: 0 ok, 2 bad configuration, 3 contract violation, 4 I/O error,
// 5 internal error.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "foelab/foelab.h"

namespace {

constexpr int kExitConfig = 2;

int report(foelab_status status) {
  std::fprintf(stderr, "foe-lab: %s\n", foelab_last_error());
  return static_cast<int>(status);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  foelab_string_free(s);
  return out;
}

// "1-10", "3", "1,4,9-12".
bool parse_seeds(const std::string& text, std::vector<uint64_t>* out) {
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    if (item.empty()) return false;
    try {
      std::size_t used = 0;
      const auto dash = item.find('-');
      if (dash == std::string::npos) {
        out->push_back(std::stoull(item, &used));
        if (used != item.size()) return false;
        continue;
      }
      const std::string lo_text = item.substr(0, dash), hi_text = item.substr(dash + 1);
      const uint64_t lo = std::stoull(lo_text, &used);
      if (used != lo_text.size()) return false;
      const uint64_t hi = std::stoull(hi_text, &used);
      if (used != hi_text.size() || hi < lo || hi - lo > 1000000) return false;
      for (uint64_t s = lo; s <= hi; ++s) out->push_back(s);
    } catch (const std::exception&) {
      return false;
    }
  }
  return !out->empty();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Follow-or-Explore experiment runner", "foe-lab"};
  std::string config_path, scenario, seeds_text, out_dir;
  int64_t horizon = 0;
  unsigned workers = 0;
  bool summary_only = false, list = false, show_config = false;

  auto* config_opt = app.add_option("--config", config_path, "JSON config or manifest file")
                         ->check(CLI::ExistingFile);
  auto* scenario_opt = app.add_option("--scenario", scenario, "built-in scenario name");
  config_opt->excludes(scenario_opt);
  app.add_option("--seeds", seeds_text, "seed list, e.g. 1-10 or 1,5,7");
  app.add_option("--horizon", horizon, "override the horizon")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "output directory (overrides FOE_LAB_OUT and the config)");
  app.add_option("--workers", workers, "parallel seed workers (0 = all cores)");
  app.add_flag("--summary-only", summary_only, "write only the aggregate CSV and manifest");
  app.add_flag("--list-scenarios", list, "print the built-in scenarios and exit");
  app.add_flag("--print-config", show_config, "print the resolved config and exit");
  app.set_version_flag("--version", foelab_version());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (list) {
    char* names = nullptr;
    if (foelab_status s = foelab_list_scenarios(&names); s != FOELAB_OK) return report(s);
    std::fputs(take(names).c_str(), stdout);
    return 0;
  }
  if (config_path.empty() && scenario.empty()) {
    std::fprintf(stderr, "foe-lab: one of --config or --scenario is required\n");
    return kExitConfig;
  }

  foelab_experiment* exp = nullptr;
  foelab_status status = config_path.empty()
                             ? foelab_experiment_from_scenario(scenario.c_str(), &exp)
                             : foelab_experiment_from_file(config_path.c_str(), &exp);
  if (status != FOELAB_OK) return report(status);

  auto run = [&]() -> foelab_status {
    if (!seeds_text.empty()) {
      std::vector<uint64_t> seeds;
      if (!parse_seeds(seeds_text, &seeds)) {
        std::fprintf(stderr, "foe-lab: bad --seeds value \"%s\"\n", seeds_text.c_str());
        return FOELAB_CONFIG_ERROR;
      }
      if (foelab_status s = foelab_experiment_set_seeds(exp, seeds.data(), seeds.size())) return s;
    }
    if (horizon > 0) {
      if (foelab_status s = foelab_experiment_set_horizon(exp, horizon)) return s;
    }
    const char* env_out = std::getenv("FOE_LAB_OUT");
    if (!out_dir.empty()) {
      if (foelab_status s = foelab_experiment_set_output_dir(exp, out_dir.c_str())) return s;
    } else if (env_out && *env_out) {
      if (foelab_status s = foelab_experiment_set_output_dir(exp, env_out)) return s;
    }
    if (foelab_status s = foelab_experiment_set_summary_only(exp, summary_only)) return s;
    if (foelab_status s = foelab_experiment_set_max_workers(exp, workers)) return s;

    if (show_config) {
      char* text = nullptr;
      if (foelab_status s = foelab_experiment_config_json(exp, &text)) return s;
      std::printf("%s\n", take(text).c_str());
      return FOELAB_OK;
    }
    char* summary = nullptr;
    if (foelab_status s = foelab_experiment_run(exp, &summary)) return s;
    std::fputs(take(summary).c_str(), stdout);
    const size_t n = foelab_experiment_file_count(exp);
    for (size_t k = 0; k < n; ++k) {
      char* path = nullptr;
      if (foelab_experiment_file(exp, k, &path) == FOELAB_OK) {
        std::printf("wrote %s\n", take(path).c_str());
      }
    }
    return FOELAB_OK;
  };

  status = run();
  if (status != FOELAB_OK && *foelab_last_error() != '\0') {
    std::fprintf(stderr, "foe-lab: %s\n", foelab_last_error());
  }
  foelab_experiment_free(exp);
  return static_cast<int>(status);
}
