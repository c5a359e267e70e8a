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

#include "qdescent/solver.hpp"

namespace qdescent {

double sandwich_lower(const Certificate& c, double alpha, std::size_t k) {
  const double m = c.m;
  return -2.0 * m * c.lambda_bar * c.lambda_bar / (alpha * static_cast<double>(k)) -
         alpha * m * (c.gbar * c.gbar / 2.0 + c.sigma0 * (1.0 + c.gbar)) - c.eps;
}

double sandwich_upper(const Certificate& c, double alpha, std::size_t k) {
  const double m = c.m;
  return c.eps + alpha * m * (c.gbar * c.gbar + c.sigma0 * (1.0 + c.gbar)) +
         3.0 * m * c.lambda_bar * c.lambda_bar /
             (2.0 * alpha * static_cast<double>(k));
}

double bounded_multiplier_radius(double Q, double lambda1_norm2, double alpha,
                                 int m, double gbar) {
  return 2.0 * Q + std::max(lambda1_norm2, Q + alpha * m * gbar);
}

double multiplier_level_slack(double alpha, int m, double gbar, double sigma0,
                              double eps) {
  return alpha * m * m * (gbar * gbar / 2.0 + sigma0 * gbar) + eps;
}

double bounded_multiplier_radius(const SlaterCertificate& cert, double f_star,
                                 double alpha, int m, double gbar,
                                 double sigma0, double eps,
                                 double lambda1_norm2) {
  const double delta = multiplier_level_slack(alpha, m, gbar, sigma0, eps);
  const double Q = slater_dual_bound(cert, f_star, delta);
  return bounded_multiplier_radius(Q, lambda1_norm2, alpha, m, gbar);
}

double sigma0_running_average(int m, double sigma1, double beta,
                              double sigma2) {
  return 2.0 * m * (sigma1 / beta + sigma2);
}

double sigma0_tracked(int m, double max_Az, double sigma3, double sigma2) {
  return 2.0 * m * (max_Az * sigma3 + sigma2);
}

double sigma0_delayed(double gbar, int tau_bar) { return gbar * tau_bar; }

void SolverPreset::validate(const ConvexProblem& p) const {
  if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  if (descent == DescentKind::kFrankWolfe && (beta <= 0.0 || beta >= 1.0))
    throw std::invalid_argument("beta must lie in (0,1)");
  if (update == ConstraintUpdate::kLinear && (!p.A || !p.b))
    throw std::invalid_argument("linear update needs A and b");
  if (descent != DescentKind::kExactArgmin && !p.has_actions())
    throw std::invalid_argument("problem has no actions");
  if (source == MultiplierSource::kSampledDelayed) {
    if (static_cast<int>(delays.size()) != p.m)
      throw std::invalid_argument("one delay per constraint required");
    for (int tau : delays)
      if (tau < 0 || tau > tau_bar)
        throw std::invalid_argument("delay outside [0, tau_bar]");
  }
  if (clip && *clip <= 0.0) throw std::invalid_argument("clip must be positive");
}

namespace {

// Greedy action for the linearised Lagrangian c^T x + mu^T A x (or the
// nonlinear g in place of A x). Lowest index wins ties.
std::size_t greedy_action(const ConvexProblem& p, const Vec& z, const Vec& mu,
                          DescentKind kind) {
  std::size_t best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  if (kind == DescentKind::kLagrangianDirect) {
    for (std::size_t j = 0; j < p.actions.size(); ++j) {
      const Vec& w = p.actions[j];
      double v = p.f(w) + dot(mu, p.g(w));
      if (v < best_v) {
        best_v = v;
        best = j;
      }
    }
    return best;
  }
  Vec c = p.gradient(z);
  Mat J = p.A ? *p.A : p.jacobian(z);
  for (std::size_t j = 0; j < p.actions.size(); ++j) {
    const Vec& w = p.actions[j];
    double v = dot(c, w);
    for (std::size_t r = 0; r < J.size(); ++r) v += mu[r] * dot(J[r], w);
    if (v < best_v) {
      best_v = v;
      best = j;
    }
  }
  return best;
}

Vec exact_increment(const ConvexProblem& p, const SolverPreset& preset,
                    const Vec& z) {
  switch (preset.update) {
    case ConstraintUpdate::kLinear:
      return linear_increment(*p.A, z, *p.b);
    default:
      return p.g(z);
  }
}

Vec sampled_increment(const ConvexProblem& p, const SolverPreset& preset,
                      const Vec& z, const Vec& x, std::size_t k) {
  switch (preset.update) {
    case ConstraintUpdate::kLinear: {
      Vec bk = preset.arrivals ? preset.arrivals(k) : *p.b;
      return linear_increment(*p.A, x, bk);
    }
    case ConstraintUpdate::kNonlinear:
      return p.g(x);
    case ConstraintUpdate::kNonlinearLinearized:
      return linearized_increment(p.g, [&](const Vec& w) { return p.jacobian(w); },
                                  z, x);
  }
  throw std::logic_error("unknown constraint update");
}

}  // namespace

Trajectory solve(const ConvexProblem& problem, const SolverPreset& preset,
                 std::size_t steps) {
  preset.validate(problem);
  Trajectory traj;
  traj.alpha = preset.alpha;

  const int depth = preset.source == MultiplierSource::kSampledDelayed
                        ? 2 * preset.tau_bar + 1
                        : 0;
  MultiplierState state(problem.m, preset.alpha, preset.clip, depth);

  Vec z = problem.box_center();
  Vec z_sum(z.size(), 0.0);

  for (std::size_t k = 1; k <= steps; ++k) {
    Vec mu;
    switch (preset.source) {
      case MultiplierSource::kExact:
        mu = state.lambda();
        break;
      case MultiplierSource::kSampled:
        mu = state.mu();
        break;
      case MultiplierSource::kSampledDelayed:
        mu = delayed_multiplier_view(state, preset.delays, preset.tau_bar);
        break;
    }

    Vec x;
    if (preset.descent == DescentKind::kExactArgmin) {
      z = dual_eval(problem, mu).z_star;
      x = z;
    } else {
      std::size_t j = greedy_action(problem, z, mu, preset.descent);
      x = problem.actions[j];
      if (preset.descent == DescentKind::kFrankWolfe)
        z = running_average_step(z, x, preset.beta);
      else
        z = x;
    }

    switch (preset.source) {
      case MultiplierSource::kExact:
        state.advance(scale(exact_increment(problem, preset, z), preset.alpha));
        state.set_mu(state.lambda());
        break;
      case MultiplierSource::kSampled:
        state.advance(scale(exact_increment(problem, preset, z), preset.alpha));
        state.advance_mu(
            scale(sampled_increment(problem, preset, z, x, k), preset.alpha));
        break;
      case MultiplierSource::kSampledDelayed:
        // The queue itself is driven by the sampled increments; mu is the
        // stale read used for the decision.
        state.advance(
            scale(sampled_increment(problem, preset, z, x, k), preset.alpha));
        state.set_mu(mu);
        break;
    }

    traj.z.push_back(z);
    traj.x.push_back(x);
    traj.lambda.push_back(state.lambda());
    traj.mu.push_back(preset.source == MultiplierSource::kSampledDelayed
                          ? mu
                          : state.mu());
    for (std::size_t i = 0; i < z.size(); ++i) z_sum[i] += z[i];
    Vec zd = scale(z_sum, 1.0 / static_cast<double>(k));
    traj.z_diamond.push_back(zd);
    traj.f_avg.push_back(problem.f(zd));
    Vec gz = problem.g(zd);
    traj.g_violation_max.push_back(*std::max_element(gz.begin(), gz.end()));
    traj.q_scaled.push_back(scale(traj.mu.back(), 1.0 / preset.alpha));
    if (preset.certificate) {
      traj.bound_lower.push_back(sandwich_lower(*preset.certificate, preset.alpha, k));
      traj.bound_upper.push_back(sandwich_upper(*preset.certificate, preset.alpha, k));
    }
  }
  return traj;
}

TailAverage average_tail(const ConvexProblem& problem, const Trajectory& traj,
                         std::size_t from) {
  if (from >= traj.size()) throw std::invalid_argument("empty tail");
  TailAverage out;
  out.z.assign(traj.z.front().size(), 0.0);
  for (std::size_t k = from; k < traj.size(); ++k)
    for (std::size_t i = 0; i < out.z.size(); ++i) out.z[i] += traj.z[k][i];
  out.z = scale(out.z, 1.0 / static_cast<double>(traj.size() - from));
  out.f = problem.f(out.z);
  Vec gz = problem.g(out.z);
  out.g_max = *std::max_element(gz.begin(), gz.end());
  return out;
}

StolyarCheck stolyar_indices(const ConvexProblem& problem, const Vec& z,
                             const Vec& mu, double alpha) {
  if (!problem.A) throw std::invalid_argument("linear constraints required");
  const Mat& A = *problem.A;
  Vec c = problem.gradient(z);
  Vec neg_c = scale(c, -1.0);
  // The utility form weights actions by alpha Q with Q the scaled queue;
  // alpha Q and mu are the same stored value, so no rescaling round-trip.
  (void)alpha;

  StolyarCheck chk;
  double best_min = std::numeric_limits<double>::infinity();
  double best_max = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < problem.actions.size(); ++j) {
    const Vec& x = problem.actions[j];
    double s = dot(c, x);
    for (std::size_t r = 0; r < A.size(); ++r) s += mu[r] * dot(A[r], x);
    if (s < best_min) {
      best_min = s;
      chk.multiplier_index = j;
    }
    // Utility form: grad U = -grad f, weights alpha Q = mu. Every term is
    // the exact IEEE negation of the term above, so the sums negate exactly.
    double t = dot(neg_c, x);
    for (std::size_t r = 0; r < A.size(); ++r) t += (-mu[r]) * dot(A[r], x);
    if (t > best_max) {
      best_max = t;
      chk.scaled_queue_index = j;
    }
  }
  chk.equal = chk.multiplier_index == chk.scaled_queue_index;
  return chk;
}

std::vector<Vec> randomized_action_map(const std::vector<Vec>& actions,
                                       const Mat& p) {
  if (p.size() != actions.size())
    throw std::invalid_argument("one distribution row per action required");
  std::vector<Vec> effective;
  effective.reserve(actions.size());
  for (std::size_t j = 0; j < actions.size(); ++j) {
    const Vec& row = p[j];
    if (row.size() != actions.size())
      throw std::invalid_argument("row length must equal |D|");
    double sum = 0.0;
    Vec ybar(actions.front().size(), 0.0);
    for (std::size_t y = 0; y < row.size(); ++y) {
      if (row[y] < 0.0) throw std::invalid_argument("negative probability");
      sum += row[y];
      for (std::size_t i = 0; i < ybar.size(); ++i)
        ybar[i] += row[y] * actions[y][i];
    }
    if (std::fabs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("rows must sum to one");
    effective.push_back(std::move(ybar));
  }
  return effective;
}

std::size_t randomized_action_index(const Vec& weights, Rng& rng) {
  double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    acc += weights[j];
    if (u <= acc) return j;
  }
  return weights.size() - 1;
}

}  // namespace qdescent
