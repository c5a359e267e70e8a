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

#include "qdescent/problem.hpp"

#include <numeric>
#include <set>
#include <sstream>

namespace qdescent {

void SeparableStructure::validate(int n) const {
  std::vector<int> seen(n, 0);
  bool full_seen = false;
  for (const auto& u : update_sets) {
    if (u.empty()) throw std::invalid_argument("empty update block");
    if (static_cast<int>(u.size()) == n) {
      std::set<int> s(u.begin(), u.end());
      if (static_cast<int>(s.size()) == n && *s.begin() == 0 &&
          *s.rbegin() == n - 1) {
        if (full_seen) throw std::invalid_argument("duplicate full set");
        full_seen = true;
        continue;
      }
    }
    for (int i : u) {
      if (i < 0 || i >= n) throw std::invalid_argument("index out of range");
      if (seen[i]++) throw std::invalid_argument("blocks overlap");
    }
  }
  for (int i = 0; i < n; ++i)
    if (!seen[i] && !(full_seen && update_sets.size() == 1))
      throw std::invalid_argument("blocks do not cover all coordinates");
}

Mat ConvexProblem::jacobian(const Vec& z) const {
  if (g_jac) return g_jac(z);
  Mat J(m, Vec(n, 0.0));
  for (int j = 0; j < m; ++j) {
    const int row = j;
    J[row] = finite_difference_gradient(
        [this, row](const Vec& w) { return g(w)[row]; }, z);
  }
  return J;
}

double ConvexProblem::lagrangian(const Vec& z, const Vec& lambda) const {
  return lagrangian_eval(*this, z, lambda);
}

bool ConvexProblem::in_ground_set(const Vec& z, double tol) const {
  if (!has_actions() || hull_is_box) {
    for (int i = 0; i < n; ++i)
      if (z[i] < box_lo[i] - tol || z[i] > box_hi[i] + tol) return false;
    return true;
  }
  return in_hull(actions, z, tol);
}

Vec ConvexProblem::project_box(Vec z) const {
  for (int i = 0; i < n; ++i)
    z[i] = std::min(box_hi[i], std::max(box_lo[i], z[i]));
  return z;
}

Vec ConvexProblem::box_center() const {
  Vec c(n);
  for (int i = 0; i < n; ++i) c[i] = 0.5 * (box_lo[i] + box_hi[i]);
  return c;
}

double ConvexProblem::diameter() const {
  if (has_actions()) {
    double best = 0.0;
    for (std::size_t i = 0; i < actions.size(); ++i)
      for (std::size_t j = i + 1; j < actions.size(); ++j)
        best = std::max(best, norm2(sub(actions[i], actions[j])));
    return best;
  }
  return norm2(sub(box_hi, box_lo));
}

Vec ConvexProblem::random_point(Rng& rng) const {
  if (has_actions() && !hull_is_box) {
    Vec w(actions.size());
    double s = 0.0;
    for (auto& x : w) s += (x = -std::log(rng.uniform(1e-12, 1.0)));
    Vec z(n, 0.0);
    for (std::size_t j = 0; j < actions.size(); ++j)
      for (int i = 0; i < n; ++i) z[i] += (w[j] / s) * actions[j][i];
    return z;
  }
  Vec z(n);
  for (int i = 0; i < n; ++i) z[i] = rng.uniform(box_lo[i], box_hi[i]);
  return z;
}

double ConvexProblem::gbar_estimate(int samples, std::uint64_t seed) const {
  double best = 0.0;
  for (const Vec& x : actions) best = std::max(best, norm_inf(g(x)));
  Rng rng(seed);
  for (int s = 0; s < samples; ++s)
    best = std::max(best, norm_inf(g(random_point(rng))));
  return 1.05 * best;
}

double ConvexProblem::max_Az_inf() const {
  if (!A) return 0.0;
  if (!has_actions() || hull_is_box) {
    // For a linear map on a box the extremes split per coordinate sign.
    double best = 0.0;
    for (const Vec& row : *A) {
      double hi = 0.0, lo = 0.0;
      for (int i = 0; i < n; ++i) {
        hi += row[i] * (row[i] >= 0.0 ? box_hi[i] : box_lo[i]);
        lo += row[i] * (row[i] >= 0.0 ? box_lo[i] : box_hi[i]);
      }
      best = std::max(best, std::max(std::fabs(hi), std::fabs(lo)));
    }
    return best;
  }
  double best = 0.0;
  for (const Vec& x : actions) best = std::max(best, norm_inf(matvec(*A, x)));
  return best;
}

std::string ConvexProblem::spot_check(int samples, std::uint64_t seed) const {
  Rng rng(seed);
  std::ostringstream warn;
  for (int s = 0; s < samples; ++s) {
    Vec z1 = random_point(rng), z2 = random_point(rng);
    Vec mid(n);
    for (int i = 0; i < n; ++i) mid[i] = 0.5 * (z1[i] + z2[i]);
    if (f(mid) > 0.5 * (f(z1) + f(z2)) + 1e-7) {
      warn << "midpoint convexity of f violated at sample " << s << "\n";
      break;
    }
    Vec gm = g(mid), g1 = g(z1), g2 = g(z2);
    for (int j = 0; j < m; ++j) {
      if (gm[j] > 0.5 * (g1[j] + g2[j]) + 1e-7) {
        warn << "midpoint convexity of g[" << j << "] violated\n";
        s = samples;
        break;
      }
    }
  }
  if (mu_f >= 0.0) {
    Rng rng2(seed + 1);
    for (int s = 0; s < samples; ++s) {
      Vec z = random_point(rng2), w = random_point(rng2);
      Vec d = sub(w, z);
      double lhs = f(w) - f(z);
      double rhs = dot(gradient(z), d) + mu_f * dot(d, d);
      if (lhs > rhs + 1e-6) {
        warn << "curvature bound for f violated at sample " << s << "\n";
        break;
      }
    }
  }
  return warn.str();
}

SlaterCertificate SlaterCertificate::from_point(const ConvexProblem& p,
                                                const Vec& z_bar) {
  SlaterCertificate c;
  c.z_bar = z_bar;
  Vec gz = p.g(z_bar);
  c.upsilon = std::numeric_limits<double>::infinity();
  for (double v : gz) c.upsilon = std::min(c.upsilon, -v);
  if (c.upsilon <= 0.0)
    throw std::invalid_argument("point is not strictly feasible");
  c.f_bar = p.f(z_bar);
  return c;
}

double lagrangian_eval(const ConvexProblem& p, const Vec& z,
                       const Vec& lambda) {
  if (static_cast<int>(z.size()) != p.n ||
      static_cast<int>(lambda.size()) != p.m)
    throw std::invalid_argument("dimension mismatch");
  for (double l : lambda)
    if (l < 0.0) throw std::invalid_argument("negative multiplier component");
  return p.f(z) + dot(lambda, p.g(z));
}

DualEvalResult dual_eval(const ConvexProblem& p, const Vec& lambda, double tol,
                         int max_iters) {
  ScalarFn L = [&](const Vec& z) { return lagrangian_eval(p, z, lambda); };
  VecFn dL = [&](const Vec& z) {
    Vec grad = p.gradient(z);
    Mat J = p.jacobian(z);
    for (int j = 0; j < p.m; ++j)
      for (int i = 0; i < p.n; ++i) grad[i] += lambda[j] * J[j][i];
    return grad;
  };
  BoxMinResult r =
      minimize_on_box(L, dL, p.box_lo, p.box_hi, p.box_center(), tol, max_iters);
  DualEvalResult out;
  out.q = r.value;
  out.z_star = r.z;
  out.residual = r.stationarity;
  out.converged = r.converged;
  return out;
}

double slater_dual_bound(const SlaterCertificate& cert, double f_star,
                         double delta) {
  if (cert.upsilon <= 0.0)
    throw std::invalid_argument("invalid certificate: upsilon <= 0");
  return (cert.f_bar - f_star + delta) / cert.upsilon;
}

std::size_t caratheodory_descent_index(const std::vector<Vec>& actions,
                                       const Vec& z) {
  if (actions.empty()) throw std::invalid_argument("empty action set");
  std::size_t best = 0;
  double best_val = dot(z, actions[0]);
  for (std::size_t j = 1; j < actions.size(); ++j) {
    double v = dot(z, actions[j]);
    if (v < best_val) {
      best_val = v;
      best = j;
    }
  }
  return best;
}

Vec caratheodory_descent_point(const std::vector<Vec>& actions, const Vec& z,
                               const Vec& /*y*/) {
  return actions[caratheodory_descent_index(actions, z)];
}

namespace {

// Points of the form z + U_u(x - z) with z, x drawn from action vertices.
Vec blend(const Vec& z, const Vec& x, const std::vector<int>& u) {
  Vec w = z;
  for (int i : u) w[i] = x[i];
  return w;
}

}  // namespace

UFeasibilityResult check_u_feasible(
    const std::vector<Vec>& actions,
    const std::vector<std::vector<int>>& update_sets, int samples,
    std::uint64_t seed) {
  UFeasibilityResult res;
  const std::size_t card = actions.size();
  // Vertex pairs suffice for an exact check: B's extreme points arise from
  // extreme z and x. Fall back to sampling when the enumeration is large.
  const std::size_t pair_count = card * card * update_sets.size();
  if (pair_count <= 8192) {
    res.exact = true;
    for (const auto& u : update_sets) {
      for (const Vec& z : actions) {
        for (const Vec& x : actions) {
          Vec w = blend(z, x, u);
          if (!in_hull(actions, w)) {
            res.feasible = false;
            res.witness_z = z;
            res.witness_x = x;
            res.witness_u = u;
            return res;
          }
        }
      }
    }
    return res;
  }
  Rng rng(seed);
  const int n = static_cast<int>(actions.front().size());
  for (int s = 0; s < samples; ++s) {
    // Random convex combination for z, random vertex for x.
    Vec w(card);
    double total = 0.0;
    for (auto& a : w) total += (a = -std::log(rng.uniform(1e-12, 1.0)));
    Vec z(n, 0.0);
    for (std::size_t j = 0; j < card; ++j)
      for (int i = 0; i < n; ++i) z[i] += (w[j] / total) * actions[j][i];
    const Vec& x = actions[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(card) - 1))];
    const auto& u = update_sets[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(update_sets.size()) - 1))];
    Vec cand = blend(z, x, u);
    if (!in_hull(actions, cand)) {
      res.feasible = false;
      res.witness_z = z;
      res.witness_x = x;
      res.witness_u = u;
      return res;
    }
  }
  return res;
}

}  // namespace qdescent
