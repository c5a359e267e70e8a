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

#ifndef QDESCENT_SCENARIO_HPP_
#define QDESCENT_SCENARIO_HPP_

#include <map>
#include <string>
#include <utility>

#include "qdescent/arrivals.hpp"
#include "qdescent/emit.hpp"
#include "qdescent/solver.hpp"

namespace qdescent {

// Flat key-value config with [section] headers; keys are stored as
// "section.key". Lines starting with '#' are comments.
std::map<std::string, std::string> parse_flat_config(const std::string& text);
std::map<std::string, std::string> load_flat_config(const std::string& path);

// Built-in scenario parameters; per-id defaults are applied first, then any
// overrides from the config map.
struct ScenarioConfig {
  std::string id = "link";  // link | unsync_queues | fig1 | fig2 | fig5 |
                            // two_timescale
  std::size_t steps = 1000;
  std::uint64_t seed = 1;
  std::string rng = Rng::kAlgorithm;

  double alpha = 0.1;
  double beta = 0.1;
  double gamma = 0.5;
  double gamma1 = 0.2;
  double eps_prime = 0.0;   // 0 means: use the per-id default
  double sbar = 1.0;        // tracker drift floor
  int tau_bar = 5;
  std::vector<int> delays;  // fixed per-constraint delays; empty = random
  Vec rates;                // arrival means b
  int n = 2;
  int d = 8;                // per-coordinate action levels {0,...,d}
  int hold = 10;            // fast slots per slow decision (two-timescale)

  std::string out_dir;
  std::string format = "csv";
  bool strict = false;

  static ScenarioConfig from_map(const std::map<std::string, std::string>& kv);

  // Throws std::invalid_argument naming the violated inequality; checks the
  // averaging-step cap and the slow-variation step-size rule where the
  // curvature constants are known.
  void validate() const;
};

struct ScenarioResult {
  Trajectory trajectory;
  // Named summary values (final averages, realised bounds, ...).
  std::vector<std::pair<std::string, double>> metrics;

  double metric(const std::string& name) const;
};

// Two-node link: node 1 receives external arrivals and forwards to node 2,
// decisions are made on delayed scaled-queue reads, and the discrete action
// follows the running sums to the nearest integer.
ScenarioResult run_link_scenario(const ScenarioConfig& config);

// n parallel queues, service levels {0,...,d}, cyclic single-coordinate
// conditional-gradient updates driven by the scaled queues.
ScenarioResult run_unsync_queues_scenario(const ScenarioConfig& config);

// Small illustrative runs: fig1 (exact vs sampled multiplier distance),
// fig2 (scalar tracker), fig5 (two-timescale tracker).
ScenarioResult run_fig_demo(const ScenarioConfig& config);

ScenarioResult run_scenario(const ScenarioConfig& config);

// Long-horizon tail-average estimate of the optimal value for a scenario.
double estimate_fstar(ScenarioConfig config, std::size_t horizon);

// Fraction of the horizon discarded before convergence assertions.
inline std::size_t burn_in(std::size_t steps) { return steps / 10; }

}  // namespace qdescent

#endif  // QDESCENT_SCENARIO_HPP_
