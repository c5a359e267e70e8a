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

#ifndef QDESCENT_PROBLEM_HPP_
#define QDESCENT_PROBLEM_HPP_

#include <optional>
#include <string>

#include "qdescent/minimize.hpp"
#include "qdescent/simplex.hpp"
#include "qdescent/types.hpp"

namespace qdescent {

// Block decomposition of the decision vector: an admissible update set is a
// partition of {0,...,n-1}, optionally together with the full index set.
// Block functions take the block subvector as argument and, for constraints,
// return a full m-vector contribution.
struct SeparableStructure {
  std::vector<std::vector<int>> update_sets;
  std::vector<ScalarFn> block_objectives;   // aligned with partition members
  std::vector<VecFn> block_constraints;     // aligned with partition members

  // Throws std::invalid_argument unless update_sets is a partition of
  // {0,...,n-1} or such a partition plus the full set.
  void validate(int n) const;

  bool is_full_set(std::size_t u_index, int n) const {
    return static_cast<int>(update_sets[u_index].size()) == n;
  }
};

// Constrained convex program: minimise f(z) over z in C subject to g(z) <= 0,
// where C is an explicit box or the convex hull of a finite action set.
struct ConvexProblem {
  int n = 0;
  int m = 0;
  ScalarFn f;
  VecFn f_grad;                         // optional; finite differences if null
  VecFn g;                              // m-vector of constraint values
  std::function<Mat(const Vec&)> g_jac; // optional; rows are constraint grads

  Vec box_lo, box_hi;                   // box C, or bounding box of conv(D)
  std::vector<Vec> actions;             // finite action set D (may be empty)
  bool hull_is_box = false;             // conv(D) known to equal its box

  std::optional<SeparableStructure> blocks;

  // Bounded-curvature constants; negative means unknown.
  double mu_f = -1.0;
  Vec mu_g;

  std::optional<Mat> A;                 // linear constraints g(z) = A z - b
  std::optional<Vec> b;

  Vec gradient(const Vec& z) const {
    return f_grad ? f_grad(z) : finite_difference_gradient(f, z);
  }
  Mat jacobian(const Vec& z) const;     // finite differences if g_jac null
  double lagrangian(const Vec& z, const Vec& lambda) const;

  bool has_actions() const { return !actions.empty(); }
  bool in_ground_set(const Vec& z, double tol = 1e-9) const;
  Vec project_box(Vec z) const;
  Vec box_center() const;

  // Diameter of conv(D) (or of the box): max pairwise 2-norm distance,
  // attained at vertices.
  double diameter() const;

  // Upper estimate of max_{z in C} ||g(z)||_inf: max over D plus interior
  // samples, inflated by 5%.
  double gbar_estimate(int samples = 1000, std::uint64_t seed = 1) const;
  // Same for max_{z in C} ||A z||_inf (exact at box vertices for linear maps
  // when C is a box; sampled otherwise).
  double max_Az_inf() const;

  // Sampling-based convexity / curvature spot checks; returns a warning
  // string when a sampled violation is found, empty otherwise. Advisory only.
  std::string spot_check(int samples = 200, std::uint64_t seed = 7) const;

  Vec random_point(Rng& rng) const;     // uniform in box / convex combo of D
};

struct SlaterCertificate {
  Vec z_bar;
  double upsilon = 0.0;   // min_j -g_j(z_bar), must be > 0
  double f_bar = 0.0;     // f(z_bar)

  static SlaterCertificate from_point(const ConvexProblem& p, const Vec& z_bar);
};

double lagrangian_eval(const ConvexProblem& p, const Vec& z, const Vec& lambda);

struct DualEvalResult {
  double q = 0.0;
  Vec z_star;
  double residual = 0.0;  // stationarity of the inner solve
  bool converged = false;
};
// q(lambda) = min_{z in C} L(z, lambda), inner minimisation by projected
// gradient over the box hull.
DualEvalResult dual_eval(const ConvexProblem& p, const Vec& lambda,
                         double tol = 1e-8, int max_iters = 10000);

// Level-set bound on dual points: (f(z_bar) - f_star + delta) / upsilon.
double slater_dual_bound(const SlaterCertificate& cert, double f_star,
                         double delta = 0.0);

// Direct search over D for x with z^T(x - y) <= 0; y must lie in conv(D).
// Ties broken by lowest index.
std::size_t caratheodory_descent_index(const std::vector<Vec>& actions,
                                       const Vec& z);
Vec caratheodory_descent_point(const std::vector<Vec>& actions, const Vec& z,
                               const Vec& y);

struct UFeasibilityResult {
  bool feasible = true;
  // Witness triple on failure: z + U_u(x - z) leaves conv(D).
  Vec witness_z, witness_x;
  std::vector<int> witness_u;
  bool exact = false;  // exhaustive vertex check vs. sampled
};
UFeasibilityResult check_u_feasible(const std::vector<Vec>& actions,
                                    const std::vector<std::vector<int>>& update_sets,
                                    int samples = 1000, std::uint64_t seed = 11);

}  // namespace qdescent

#endif  // QDESCENT_PROBLEM_HPP_
