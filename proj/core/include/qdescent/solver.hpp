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

#ifndef QDESCENT_SOLVER_HPP_
#define QDESCENT_SOLVER_HPP_

#include <optional>

#include "qdescent/descent.hpp"
#include "qdescent/problem.hpp"
#include "qdescent/queue.hpp"
#include "qdescent/tracker.hpp"

namespace qdescent {

enum class DescentKind {
  kExactArgmin,       // z in argmin_C L(z, mu), continuous inner solve
  kFrankWolfe,        // x in argmin_D (grad f(z) + A^T mu)^T x, then average
  kLagrangianDirect,  // x in argmin_D f(w) + mu^T g(w), z tracks x
};

enum class MultiplierSource {
  kExact,           // act on lambda itself
  kSampled,         // act on mu driven by sampled actions / arrivals
  kSampledDelayed,  // per-constraint delayed reads of the sampled multiplier
};

enum class ConstraintUpdate {
  kLinear,               // increment A x - b_k
  kNonlinear,            // increment g(x)
  kNonlinearLinearized,  // increment g(z) + Jg(z)(x - z)
};

// Constants entering the optimality sandwich. sigma0 bounds the scaled
// certificate ||lambda - mu||_inf <= alpha sigma0; eps is the inner argmin
// slack.
struct Certificate {
  double m = 0.0;
  double gbar = 0.0;
  double sigma0 = 0.0;
  double eps = 0.0;
  double lambda_bar = 0.0;
};

double sandwich_lower(const Certificate& c, double alpha, std::size_t k);
double sandwich_upper(const Certificate& c, double alpha, std::size_t k);

// lambda_bar = 2Q + max{||lambda_1||_2, Q + alpha m gbar}
double bounded_multiplier_radius(double Q, double lambda1_norm2, double alpha,
                                 int m, double gbar);
// delta = alpha m^2 (gbar^2/2 + sigma0 gbar) + eps, the level-set slack used
// when sizing Q for clipped updates.
double multiplier_level_slack(double alpha, int m, double gbar, double sigma0,
                              double eps);
// Certificate variant: sizes the level set with the slack above, then applies
// the radius formula.
double bounded_multiplier_radius(const SlaterCertificate& cert, double f_star,
                                 double alpha, int m, double gbar,
                                 double sigma0, double eps,
                                 double lambda1_norm2);

// Certified multiplier gaps per approximate-multiplier construction:
// running average, prefix-tracked actions, and delayed reads.
double sigma0_running_average(int m, double sigma1, double beta, double sigma2);
double sigma0_tracked(int m, double max_Az, double sigma3, double sigma2);
double sigma0_delayed(double gbar, int tau_bar);

struct SolverPreset {
  DescentKind descent = DescentKind::kFrankWolfe;
  MultiplierSource source = MultiplierSource::kSampled;
  ConstraintUpdate update = ConstraintUpdate::kLinear;
  double alpha = 0.1;
  double beta = 0.1;
  std::optional<double> clip;           // multiplier clip lambda_bar
  std::vector<int> delays;              // per constraint, kSampledDelayed only
  int tau_bar = 0;
  std::optional<Certificate> certificate;
  // Slot arrivals b_k for the sampled update; defaults to the static b.
  std::function<Vec(std::size_t)> arrivals;
  void validate(const ConvexProblem& p) const;
};

struct Trajectory {
  std::vector<Vec> z, x, lambda, mu;
  std::vector<Vec> z_diamond;          // running averages (1/k) sum z_i
  std::vector<double> f_avg;           // f(z_diamond_k)
  std::vector<double> g_violation_max; // max_j g_j(z_diamond_k)
  std::vector<Vec> q_scaled;           // mu_k / alpha
  std::vector<double> bound_lower, bound_upper;  // empty without certificate
  double alpha = 0.0;

  std::size_t size() const { return z.size(); }
};

// Unified multiplier-driven loop over the presets. The RNG is only touched
// by stochastic arrival callbacks the caller installs.
Trajectory solve(const ConvexProblem& problem, const SolverPreset& preset,
                 std::size_t steps);

// f and max_j g_j at the average of traj.z over [from, size).
struct TailAverage {
  Vec z;
  double f = 0.0;
  double g_max = 0.0;
};
TailAverage average_tail(const ConvexProblem& problem, const Trajectory& traj,
                         std::size_t from);

// Index of the greedy action under the weighted-dual form
// argmax_D (grad U(z) - alpha Q^T A) x with U = -f and Q = mu / alpha,
// against the multiplier form argmin_D (grad f(z) + mu^T A) x. The two are
// negations of each other, so with lowest-index tie-breaking the indices
// agree exactly.
struct StolyarCheck {
  std::size_t multiplier_index = 0;
  std::size_t scaled_queue_index = 0;
  bool equal = false;
};
StolyarCheck stolyar_indices(const ConvexProblem& problem, const Vec& z,
                             const Vec& mu, double alpha);

// Samples an action index from simplex weights by inverse CDF.
std::size_t randomized_action_index(const Vec& weights, Rng& rng);

// Effective actions under random realisation: row j of p gives the
// distribution of the realised action when x_j is commanded; the result is
// the per-command expectation. Throws unless p is row-stochastic.
std::vector<Vec> randomized_action_map(const std::vector<Vec>& actions,
                                       const Mat& p);

}  // namespace qdescent

#endif  // QDESCENT_SOLVER_HPP_
