// Copyright 2026 The qdescent Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "qdescent/scenario.hpp"
#include "vendor/CLI11.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBound = 3;

struct Overrides {
  std::size_t steps = 0;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string out_dir;
  std::string format;
  bool strict = false;
};

void apply(const Overrides& o, qdescent::ScenarioConfig& cfg) {
  if (o.steps > 0) cfg.steps = o.steps;
  if (o.has_seed) cfg.seed = o.seed;
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (!o.format.empty()) cfg.format = o.format;
  if (o.strict) cfg.strict = true;
}

// Bound assertions checked under --strict: every realised quantity with a
// declared bound must respect it.
bool bounds_hold(const qdescent::ScenarioResult& res) {
  static const std::pair<const char*, const char*> kPairs[] = {
      {"max_multiplier_gap", "gap_bound"},
      {"max_prefix_deviation", "deviation_bound"},
  };
  for (const auto& [observed, bound] : kPairs) {
    try {
      if (res.metric(observed) > res.metric(bound) + 1e-12) return false;
    } catch (const std::out_of_range&) {
    }
  }
  try {
    if (res.metric("arrival_prefix_dev") > 1.0) return false;
  } catch (const std::out_of_range&) {
  }
  return true;
}

int emit_result(const qdescent::ScenarioConfig& cfg,
                const qdescent::ScenarioResult& res) {
  const auto format = qdescent::parse_emit_format(cfg.format);
  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::string ext = format == qdescent::EmitFormat::kCsv ? ".csv" : ".jsonl";
    const std::string path = cfg.out_dir + "/" + cfg.id + ext;
    qdescent::emit_file(res.trajectory, format, path);
    std::ofstream meta(cfg.out_dir + "/" + cfg.id + ".meta");
    meta << "id = " << cfg.id << "\nsteps = " << cfg.steps
         << "\nseed = " << cfg.seed << "\nrng = " << cfg.rng << "\n";
    for (const auto& [k, v] : res.metrics) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.12g", v);
      meta << k << " = " << buf << "\n";
    }
    std::cout << "wrote " << path << "\n";
  } else {
    qdescent::emit(res.trajectory, format, std::cout);
  }
  for (const auto& [k, v] : res.metrics) std::cerr << k << " = " << v << "\n";
  std::cerr << "seed = " << cfg.seed << "\n";
  if (cfg.strict && !bounds_hold(res)) {
    std::cerr << "bound assertion failed\n";
    return kExitBound;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"descent with approximate multipliers: scenario runner"};
  app.require_subcommand(1);

  Overrides o;
  app.add_option("--steps", o.steps, "horizon K");
  app.add_option("--seed", o.seed, "rng seed")->each([&](const std::string&) {
    o.has_seed = true;
  });
  app.add_option("--out", o.out_dir, "output directory");
  app.add_option("--format", o.format, "csv | jsonlines");
  app.add_flag("--strict", o.strict, "exit 3 when a bound assertion fails");

  std::string config_path, demo_name;
  auto* run = app.add_subcommand("run", "run a scenario from a config file");
  run->add_option("config", config_path, "config path")->required();
  auto* demo = app.add_subcommand("demo", "run a builtin scenario");
  demo->add_option("name", demo_name, "fig1|fig2|fig5|link|unsync")->required();
  auto* validate = app.add_subcommand("validate", "check a config file");
  validate->add_option("config", config_path, "config path")->required();
  auto* oracle = app.add_subcommand("oracle",
                                    "long-horizon optimal-value estimate");
  oracle->add_option("config", config_path, "config path")->required();

  for (auto* sub : {run, demo, validate, oracle}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    qdescent::ScenarioConfig cfg;
    if (demo->parsed()) {
      std::map<std::string, std::string> kv;
      kv["scenario.id"] = demo_name == "unsync" ? "unsync_queues" : demo_name;
      cfg = qdescent::ScenarioConfig::from_map(kv);
    } else {
      cfg = qdescent::ScenarioConfig::from_map(
          qdescent::load_flat_config(config_path));
    }
    apply(o, cfg);

    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    }
    if (validate->parsed()) {
      std::cout << "ok\n";
      return 0;
    }
    if (oracle->parsed()) {
      const std::size_t horizon = o.steps > 0 ? o.steps : 200000;
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.12g",
                    qdescent::estimate_fstar(cfg, horizon));
      std::cout << "f_star_estimate = " << buf << "\n";
      return 0;
    }
    return emit_result(cfg, qdescent::run_scenario(cfg));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
