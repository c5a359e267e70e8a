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

#include "qdescent/descent.hpp"

#include <numeric>

#include "qdescent/minimize.hpp"

namespace qdescent {

void DescentConfig::validate() const {
  if (beta <= 0.0 || beta >= 1.0)
    throw std::invalid_argument("beta must lie in (0,1)");
  if (eps_prime <= 0.0)
    throw std::invalid_argument("eps_prime must be positive");
  if (gamma <= 0.0 || gamma >= 1.0)
    throw std::invalid_argument("gamma must lie in (0,1)");
  if (gamma1 <= 0.0 || gamma1 >= gamma / 2.0)
    throw std::invalid_argument("gamma1 must lie in (0, gamma/2)");
  if (max_interval < 1)
    throw std::invalid_argument("max_interval must be at least 1");
  if (beta > beta_cap() + 1e-15)
    throw std::invalid_argument("beta exceeds the admissible cap");
}

UpdateSchedule UpdateSchedule::full(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  UpdateSchedule s;
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  s.blocks_.push_back(std::move(all));
  s.order_.push_back(0);
  return s;
}

UpdateSchedule UpdateSchedule::cyclic(std::vector<std::vector<int>> blocks) {
  if (blocks.empty()) throw std::invalid_argument("no blocks");
  UpdateSchedule s;
  s.blocks_ = std::move(blocks);
  s.order_.resize(s.blocks_.size());
  std::iota(s.order_.begin(), s.order_.end(), 0);
  return s;
}

UpdateSchedule UpdateSchedule::custom(std::vector<std::vector<int>> blocks,
                                      std::vector<std::size_t> order, int n) {
  if (order.empty()) throw std::invalid_argument("empty order");
  UpdateSchedule s;
  s.blocks_ = std::move(blocks);
  s.order_ = std::move(order);
  std::vector<bool> covered(static_cast<std::size_t>(n), false);
  for (std::size_t b : s.order_) {
    if (b >= s.blocks_.size()) throw std::invalid_argument("order out of range");
    for (int i : s.blocks_[b]) {
      if (i < 0 || i >= n) throw std::invalid_argument("coordinate out of range");
      covered[static_cast<std::size_t>(i)] = true;
    }
  }
  for (bool c : covered)
    if (!c) throw std::invalid_argument("order does not cover all coordinates");
  return s;
}

namespace {

Vec gather(const Vec& z, const std::vector<int>& u) {
  Vec out;
  out.reserve(u.size());
  for (int i : u) out.push_back(z[static_cast<std::size_t>(i)]);
  return out;
}

Vec blend(const Vec& z, const Vec& x, const std::vector<int>& u, double beta) {
  Vec out = z;
  for (int i : u) {
    auto s = static_cast<std::size_t>(i);
    out[s] = z[s] + beta * (x[s] - z[s]);
  }
  return out;
}

}  // namespace

BlockStep descent_step_direct(const ScalarFn& F_block, const Vec& z,
                              const std::vector<int>& u,
                              const std::vector<Vec>& actions, double beta) {
  if (actions.empty()) throw std::invalid_argument("empty action set");
  BlockStep step;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < actions.size(); ++j) {
    Vec trial = gather(blend(z, actions[j], u, beta), u);
    double v = F_block(trial);
    if (v < best) {
      best = v;
      step.action_index = j;
    }
  }
  step.action = actions[step.action_index];
  step.z_next = blend(z, step.action, u, beta);
  step.value_before = F_block(gather(z, u));
  step.value_after = best;
  return step;
}

BlockStep descent_step_fw(const Vec& grad_at_z, const Vec& z,
                          const std::vector<int>& u,
                          const std::vector<Vec>& actions, double beta) {
  if (actions.empty()) throw std::invalid_argument("empty action set");
  BlockStep step;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < actions.size(); ++j) {
    double v = 0.0;
    for (int i : u) {
      auto s = static_cast<std::size_t>(i);
      v += grad_at_z[s] * actions[j][s];
    }
    if (v < best) {
      best = v;
      step.action_index = j;
    }
  }
  step.action = actions[step.action_index];
  step.z_next = blend(z, step.action, u, beta);
  return step;
}

SlowVariationResult slow_variation_check(const ScalarFn& F_k,
                                         const ScalarFn& F_k1,
                                         const std::vector<Vec>& samples,
                                         double bound) {
  SlowVariationResult res;
  for (const Vec& z : samples) {
    double gap = std::fabs(F_k1(z) - F_k(z));
    if (gap > res.worst_gap) {
      res.worst_gap = gap;
      res.witness = z;
    }
  }
  res.ok = res.worst_gap <= bound + 1e-15;
  return res;
}

double slow_variation_alpha_cap(const DescentConfig& cfg, double gbar) {
  if (gbar <= 0.0) throw std::invalid_argument("gbar must be positive");
  return cfg.gamma1 * cfg.gamma * cfg.beta * cfg.eps_prime / (2.0 * gbar);
}

DescentTrajectory run_descent(const ConvexProblem& problem,
                              const UpdateSchedule& schedule,
                              const DescentConfig& config,
                              const TimeVaryingObjective& objective,
                              DescentEngine engine, Vec z0, std::size_t steps,
                              bool reference_gaps) {
  config.validate();
  if (static_cast<int>(z0.size()) != problem.n)
    throw std::invalid_argument("start dimension mismatch");

  DescentTrajectory traj;
  traj.z.reserve(steps + 1);
  traj.z.push_back(z0);
  traj.values.push_back(objective.value(0, z0));

  Vec z = std::move(z0);
  for (std::size_t k = 0; k < steps; ++k) {
    const std::vector<int>& u = schedule.block(k);
    const std::size_t u_index = schedule.block_index(k);
    BlockStep step;
    if (engine == DescentEngine::kDirect) {
      auto F_block = [&](const Vec& zu) { return objective.block(k, u_index, zu); };
      step = descent_step_direct(F_block, z, u, problem.actions, config.beta);
    } else {
      Vec grad = objective.grad ? objective.grad(k, z)
                                : finite_difference_gradient(
                                      [&](const Vec& w) { return objective.value(k, w); }, z);
      step = descent_step_fw(grad, z, u, problem.actions, config.beta);
    }
    z = std::move(step.z_next);
    traj.z.push_back(z);
    traj.values.push_back(objective.value(k + 1, z));

    if (schedule.at_boundary(k + 1)) {
      traj.boundaries.push_back(k + 1);
      if (reference_gaps) {
        auto Fk = [&](const Vec& w) { return objective.value(k + 1, w); };
        auto Gk = [&](const Vec& w) {
          return objective.grad ? objective.grad(k + 1, w)
                                : finite_difference_gradient(Fk, w);
        };
        auto ref = minimize_on_box(Fk, Gk, problem.box_lo, problem.box_hi,
                                   problem.box_center());
        traj.boundary_gaps.push_back(traj.values.back() - ref.value);
      }
    }
  }
  return traj;
}

}  // namespace qdescent
