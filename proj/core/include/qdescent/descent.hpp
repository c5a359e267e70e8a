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

#ifndef QDESCENT_DESCENT_HPP_
#define QDESCENT_DESCENT_HPP_

#include "qdescent/problem.hpp"
#include "qdescent/types.hpp"

namespace qdescent {

// Step-size and tolerance bundle for action-set descent. The averaging step
// must respect beta <= (1-gamma) gamma min{eps' / (N mu_F xbar^2), 1}.
struct DescentConfig {
  double beta = 0.0;
  double eps_prime = 0.0;       // per-block descent tolerance
  double gamma = 0.5;
  double gamma1 = 0.2;          // must lie in (0, gamma/2)
  int max_interval = 1;         // N, covering-interval length cap
  double curvature = 0.0;       // mu_F
  double diameter = 0.0;        // xbar_D

  double beta_cap() const {
    double ratio = (curvature > 0.0 && diameter > 0.0)
                       ? eps_prime / (max_interval * curvature * diameter * diameter)
                       : 1.0;
    return (1.0 - gamma) * gamma * std::min(ratio, 1.0);
  }
  // Max admissible |F_{k+1}(z) - F_k(z)| over C.
  double slow_variation_bound() const {
    return gamma1 * gamma / (2.0 * max_interval) * beta * eps_prime;
  }
  // Ball radius certified at covering boundaries: (|U| + 1) eps'.
  double ball_radius(std::size_t num_blocks) const {
    return (static_cast<double>(num_blocks) + 1.0) * eps_prime;
  }
  void validate() const;  // throws std::invalid_argument naming the violation
};

// Sequence u_k of update blocks, partitioned into covering intervals over
// which the union of blocks is all coordinates.
class UpdateSchedule {
 public:
  static UpdateSchedule full(int n);
  static UpdateSchedule cyclic(std::vector<std::vector<int>> blocks);
  static UpdateSchedule custom(std::vector<std::vector<int>> blocks,
                               std::vector<std::size_t> order, int n);

  const std::vector<int>& block(std::size_t k) const {
    return blocks_[order_[k % order_.size()]];
  }
  std::size_t block_index(std::size_t k) const {
    return order_[k % order_.size()];
  }
  bool at_boundary(std::size_t k) const { return k % order_.size() == 0; }
  int covering_length() const { return static_cast<int>(order_.size()); }
  std::size_t num_blocks() const { return blocks_.size(); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

 private:
  std::vector<std::vector<int>> blocks_;
  std::vector<std::size_t> order_;  // one covering interval, repeated
};

struct BlockStep {
  std::size_t action_index = 0;
  Vec action;
  Vec z_next;
  double value_before = 0.0;  // block objective at z
  double value_after = 0.0;   // block objective at z_next
};

// Direct search: x in argmin_{w in D} F^u(z^u + beta (w^u - z^u)), then
// z <- z + beta U_u(x - z). F_block takes the block subvector.
BlockStep descent_step_direct(const ScalarFn& F_block, const Vec& z,
                              const std::vector<int>& u,
                              const std::vector<Vec>& actions, double beta);

// Conditional-gradient variant: x in argmin_{w in D} grad^T U_u w.
BlockStep descent_step_fw(const Vec& grad_at_z, const Vec& z,
                          const std::vector<int>& u,
                          const std::vector<Vec>& actions, double beta);

struct SlowVariationResult {
  bool ok = true;
  double worst_gap = 0.0;
  Vec witness;
};
SlowVariationResult slow_variation_check(const ScalarFn& F_k,
                                         const ScalarFn& F_k1,
                                         const std::vector<Vec>& samples,
                                         double bound);
// Analytic sufficient step size for Lagrangian flows:
// alpha <= gamma1 gamma beta eps' / (2 gbar).
double slow_variation_alpha_cap(const DescentConfig& cfg, double gbar);

// Time-varying objective fed to run_descent. `block` receives the block
// subvector; `value` and `grad` the full vector.
struct TimeVaryingObjective {
  std::function<double(std::size_t k, const Vec& z)> value;
  std::function<double(std::size_t k, std::size_t u_index, const Vec& zu)> block;
  std::function<Vec(std::size_t k, const Vec& z)> grad;  // optional
};

enum class DescentEngine { kDirect, kFrankWolfe };

struct DescentTrajectory {
  std::vector<Vec> z;             // iterates, z[0] = start
  std::vector<double> values;     // F_k(z_k)
  std::vector<std::size_t> boundaries;
  std::vector<double> boundary_gaps;  // F(z) - min_C F at boundaries
};

// Runs the per-slot loop; when `reference_gaps` is set the minimum of F_k
// over the box hull is computed at each covering boundary with a projected
// gradient oracle.
DescentTrajectory run_descent(const ConvexProblem& problem,
                              const UpdateSchedule& schedule,
                              const DescentConfig& config,
                              const TimeVaryingObjective& objective,
                              DescentEngine engine, Vec z0, std::size_t steps,
                              bool reference_gaps = false);

}  // namespace qdescent

#endif  // QDESCENT_DESCENT_HPP_
