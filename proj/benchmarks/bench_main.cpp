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

#include <benchmark/benchmark.h>

#include "qdescent/queue.hpp"
#include "qdescent/scenario.hpp"
#include "qdescent/tracker.hpp"

namespace {

void BM_SkorokhodClosedForm(benchmark::State& state) {
  qdescent::Rng rng(1);
  qdescent::Vec inc(static_cast<std::size_t>(state.range(0)));
  for (double& v : inc) v = rng.uniform(-1.0, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(qdescent::skorokhod_closed_form(0.0, inc));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SkorokhodClosedForm)->Range(64, 65536);

void BM_TrackerStep(benchmark::State& state) {
  std::vector<qdescent::Vec> actions;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      actions.push_back({static_cast<double>(a), static_cast<double>(b)});
  qdescent::ActionTracker tracker(actions, 1.0);
  qdescent::Rng rng(2);
  qdescent::Vec z = {0.3, 0.6};
  for (auto _ : state) {
    z[0] = rng.uniform();
    z[1] = rng.uniform();
    benchmark::DoNotOptimize(tracker.step(z));
  }
}
BENCHMARK(BM_TrackerStep);

void BM_LinkScenarioSlot(benchmark::State& state) {
  qdescent::ScenarioConfig cfg;
  cfg.id = "link";
  cfg.rates = {0.5};
  cfg.steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(qdescent::run_link_scenario(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LinkScenarioSlot)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
