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

// End-to-end acceptance suite: one pass/fail line per criterion, timed.

#include <chrono>
#include <cstdio>
#include <string>

#include "qdescent/descent.hpp"
#include "qdescent/minimize.hpp"
#include "qdescent/queue.hpp"
#include "qdescent/scenario.hpp"
#include "qdescent/solver.hpp"
#include "qdescent/tracker.hpp"
#include "tests/test_util.hpp"

using namespace qdescent;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Timer {
  Clock::time_point start = Clock::now();
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

void report(int idx, const std::string& name, bool pass, double secs,
            const std::string& detail) {
  std::printf("criterion %2d %-38s %s  (%.2fs%s%s)\n", idx, name.c_str(),
              pass ? "PASS" : "FAIL", secs, detail.empty() ? "" : "; ",
              detail.c_str());
  if (!pass) ++g_failures;
}

// 1. Two-node link scenario: tail average of f and of the scaled queues close
// to the known optimum on at least 9 of 10 seeds, under 5 seconds.
void criterion_link() {
  Timer t;
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ScenarioConfig c = ScenarioConfig::from_map({{"scenario.id", "link"}});
    c.seed = seed;
    ScenarioResult res = run_link_scenario(c);
    const bool f_ok = std::fabs(res.metric("f_diamond_burnin") - 2.15) <= 0.05;
    const bool q_ok =
        std::fabs(res.metric("alpha_q1_tail") - 2.56) <= 0.3 &&
        std::fabs(res.metric("alpha_q2_tail") - 1.65) <= 0.3;
    if (f_ok && q_ok) ++hits;
  }
  double secs = t.seconds();
  report(1, "link scenario reproduction", hits >= 9 && secs < 5.0, secs,
         std::to_string(hits) + "/10 seeds");
}

// 2. Closed-form reflected walk equals the iterated recursion.
void criterion_skorokhod() {
  Timer t;
  Rng rng(2024);
  int violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    double lam1 = rng.uniform(0.0, 5.0);
    int len = rng.uniform_int(1, 200);
    Vec inc(static_cast<std::size_t>(len));
    Vec lam = {lam1};
    for (double& v : inc) {
      v = rng.uniform(-3.0, 3.0);
      lam = queue_update(lam, {v});
    }
    double closed = skorokhod_closed_form(lam1, inc);
    if (std::fabs(closed - lam[0]) >
        1e-12 * std::max(1.0, std::fabs(lam[0])))
      ++violations;
  }
  double secs = t.seconds();
  report(2, "closed-form queue equivalence", violations == 0 && secs < 2.0,
         secs, std::to_string(violations) + " violations");
}

// 3. Queue continuity: realised distance within twice the max prefix gap at
// every prefix.
void criterion_continuity() {
  Timer t;
  Rng rng(3031);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int len = rng.uniform_int(1, 200);
    Vec x(static_cast<std::size_t>(len)), y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = rng.uniform(-3.0, 3.0);
      y[i] = rng.uniform(-3.0, 3.0);
    }
    QueueDistanceReport rep = queue_distance_bound(x, y, rng.uniform(0.0, 3.0));
    for (std::size_t k = 0; k < rep.lhs.size(); ++k)
      if (rep.lhs[k] > rep.rhs[k] + 1e-12) ++violations;
  }
  report(3, "queue continuity bound", violations == 0, t.seconds(),
         std::to_string(violations) + " violations");
}

// 4. Running-average certificate: the sampled multiplier tracks the exact one
// within 2 m alpha (sigma1 / beta + sigma2) at every step.
void criterion_running_average() {
  Timer t;
  const double alpha = 0.1, beta = 0.1, b = 0.5;
  const Vec D = {0.0, 1.0, 2.0};
  const double sigma1 = 2.0 * 2.0;  // 2 max |A z| with A = 1 on [0, 2]
  const double sigma2 = 0.5;        // dithered arrivals at rate one half
  const double bound = 2.0 * 1.0 * alpha * (sigma1 / beta + sigma2);

  Rng rng(404);
  ArrivalProcess arrivals(ArrivalKind::kDither, {b});
  double z = 0.0, lambda = 0.0, mu = 0.0;
  int violations = 0;
  for (std::size_t k = 1; k <= 10000; ++k) {
    double x = D[static_cast<std::size_t>(rng.uniform_int(0, 2))];
    double bk = arrivals.at(k)[0];
    z = (1.0 - beta) * z + beta * x;
    lambda = std::max(0.0, lambda + alpha * (z - b));
    mu = std::max(0.0, mu + alpha * (x - bk));
    if (std::fabs(lambda - mu) > bound + 1e-12) ++violations;
  }
  report(4, "running-average certificate", violations == 0, t.seconds(),
         std::to_string(violations) + " violations");
}

// 5. Tracker: prefix deviation, zero-sum drift, and drift floor over a
// million steps of random, adversarial, and harmonic sequences.
void criterion_tracker() {
  Timer t;
  int violations = 0;
  long long steps = 0;

  auto run = [&](ActionTracker& tracker, const std::vector<Vec>& zs) {
    Vec prefix(zs.front().size(), 0.0);
    for (const Vec& z : zs) {
      auto sel = tracker.step(z);
      for (std::size_t i = 0; i < prefix.size(); ++i)
        prefix[i] += z[i] - sel.action[i];
      ++steps;
      if (norm_inf(prefix) > tracker.deviation_bound() + 1e-9) ++violations;
      if (std::fabs(tracker.drift_sum()) > 1e-9) ++violations;
      for (double s : tracker.drift())
        if (s < -tracker.drift_floor() - 1e-9) ++violations;
    }
  };

  Rng rng(505);
  const std::vector<Vec> line = {{0.0}, {1.0}};
  const std::vector<Vec> tri = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  {
    ActionTracker tracker(line);
    std::vector<Vec> zs;
    zs.reserve(400000);
    for (int k = 0; k < 400000; ++k) zs.push_back({rng.uniform()});
    run(tracker, zs);
  }
  {
    ActionTracker tracker(line);
    std::vector<Vec> zs;
    zs.reserve(300000);
    for (int k = 0; k < 300000; ++k) zs.push_back({k % 2 ? 0.999 : 0.001});
    run(tracker, zs);
  }
  {
    ActionTracker tracker(tri);
    std::vector<Vec> zs;
    zs.reserve(200000);
    for (int k = 0; k < 200000; ++k) {
      double a = rng.uniform(), c = rng.uniform(0.0, (1.0 - a) * 0.999);
      zs.push_back({a, c});
    }
    run(tracker, zs);
  }
  {
    ActionTracker tracker(line);
    std::vector<Vec> zs;
    zs.reserve(100000);
    for (int k = 1; k <= 100000; ++k) zs.push_back({0.75 / k + 0.25});
    run(tracker, zs);
  }
  report(5, "tracker prefix bound", violations == 0 && steps >= 1000000,
         t.seconds(),
         std::to_string(steps) + " steps, " + std::to_string(violations) +
             " violations");
}

// 6. Descent certificate: guaranteed decrease when an improving block point
// exists, bounded backslide otherwise, for both engines.
void criterion_descent() {
  Timer t;
  std::vector<Vec> square = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const double mu_F = 1.0, xbar2 = 2.0, gamma = 0.5;
  Rng rng(606);
  int violations = 0, improving_hits = 0;

  for (int trial = 0; trial < 1000; ++trial) {
    Vec c = {rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 2.0)};
    auto F = [c](const Vec& z) {
      return (z[0] - c[0]) * (z[0] - c[0]) + (z[1] - c[1]) * (z[1] - c[1]);
    };
    auto G = [c](const Vec& z) {
      return Vec{2.0 * (z[0] - c[0]), 2.0 * (z[1] - c[1])};
    };
    Vec z = {rng.uniform(), rng.uniform()};
    std::vector<int> u = (trial % 3 == 0) ? std::vector<int>{0, 1}
                         : (trial % 3 == 1) ? std::vector<int>{0}
                                            : std::vector<int>{1};
    double eps_prime = rng.uniform(0.05, 0.5);
    double beta =
        0.999 * (1.0 - gamma) * gamma * std::min(eps_prime / (mu_F * xbar2), 1.0);

    Vec lo = z, hi = z;
    for (int i : u) {
      lo[static_cast<std::size_t>(i)] = 0.0;
      hi[static_cast<std::size_t>(i)] = 1.0;
    }
    double fmin = minimize_on_box(F, G, lo, hi, z).value;
    bool improving = fmin <= F(z) - eps_prime * (1.0 + 1e-9);
    if (improving) ++improving_hits;

    for (int engine = 0; engine < 2; ++engine) {
      BlockStep s;
      if (engine == 0) {
        auto F_block = [&](const Vec& zu) {
          Vec w = z;
          for (std::size_t j = 0; j < u.size(); ++j)
            w[static_cast<std::size_t>(u[j])] = zu[j];
          return F(w);
        };
        s = descent_step_direct(F_block, z, u, square, beta);
      } else {
        s = descent_step_fw(G(z), z, u, square, beta);
      }
      double delta = F(s.z_next) - F(z);
      if (improving && delta > -gamma * beta * eps_prime + 1e-10) ++violations;
      if (delta > mu_F * beta * beta * xbar2 + 1e-10) ++violations;
    }
  }
  report(6, "block-descent certificate",
         violations == 0 && improving_hits > 100, t.seconds(),
         std::to_string(improving_hits) + " improving instances, " +
             std::to_string(violations) + " violations");
}

// 7. Optimality sandwich: exact dual subgradient keeps the averaged objective
// inside the certified window at every checkpoint after burn-in.
void criterion_sandwich() {
  Timer t;
  ConvexProblem toy = testutil::make_toy();
  SlaterCertificate sc = SlaterCertificate::from_point(toy, {2.0});
  int violations = 0;
  for (double alpha : {0.1, 0.01}) {
    SolverPreset preset;
    preset.descent = DescentKind::kExactArgmin;
    preset.source = MultiplierSource::kExact;
    preset.update = ConstraintUpdate::kNonlinear;
    preset.alpha = alpha;

    Certificate cert;
    cert.m = 1.0;
    cert.gbar = 1.0;
    cert.sigma0 = 0.0;
    cert.eps = 1e-6;
    cert.lambda_bar =
        bounded_multiplier_radius(sc, 1.0, alpha, 1, 1.0, 0.0, cert.eps, 0.0);
    preset.certificate = cert;

    const std::size_t K = 10000;
    Trajectory traj = solve(toy, preset, K);
    const std::size_t cadence = (K + 99) / 100;
    for (std::size_t k = burn_in(K); k < K; k += cadence) {
      double gap = traj.f_avg[k] - 1.0;
      if (gap < traj.bound_lower[k] - 1e-9 || gap > traj.bound_upper[k] + 1e-9)
        ++violations;
    }
  }
  report(7, "optimality sandwich", violations == 0, t.seconds(),
         std::to_string(violations) + " checkpoint violations");
}

// 8. Parallel-queue scenario: averaged objective and final multipliers land
// at the analytic optimum f* = 2.5, lambda* = (1, 3).
void criterion_unsync() {
  Timer t;
  ScenarioConfig c = ScenarioConfig::from_map({{"scenario.id", "unsync_queues"}});
  ScenarioResult res = run_unsync_queues_scenario(c);
  const Vec& mu_K = res.trajectory.mu.back();
  double f = res.metric("f_diamond_burnin");
  bool pass = std::fabs(f - 2.5) <= 0.15 &&
              std::fabs(mu_K[0] - 1.0) <= 0.3 && std::fabs(mu_K[1] - 3.0) <= 0.3;
  char detail[96];
  std::snprintf(detail, sizeof(detail), "f=%.3f mu=(%.3f, %.3f)", f, mu_K[0],
                mu_K[1]);
  report(8, "parallel-queue scenario", pass, t.seconds(), detail);
}

// 9. The weighted-dual and multiplier forms of max-weight pick identical
// action indices along a full trajectory.
void criterion_stolyar() {
  Timer t;
  ConvexProblem p = testutil::make_queues(2, 3, {0.5, 1.5});
  const double alpha = 0.1;
  Vec mu = {0.0, 0.0};
  Vec z = p.box_center();
  int mismatches = 0;
  for (int k = 0; k < 1000; ++k) {
    StolyarCheck chk = stolyar_indices(p, z, mu, alpha);
    if (!chk.equal) ++mismatches;
    const Vec& x = p.actions[chk.multiplier_index];
    mu = queue_update(mu, scale(linear_increment(*p.A, x, *p.b), alpha));
    z = running_average_step(z, x, 0.1);
  }
  report(9, "max-weight index equivalence", mismatches == 0, t.seconds(),
         std::to_string(mismatches) + " mismatches");
}

// 10. Delayed reads: the stale multiplier stays within alpha gbar tau_bar of
// the live one for every delay cap from 1 to 10.
void criterion_delay() {
  Timer t;
  const double alpha = 0.1, gbar = 1.5;
  Rng rng(707);
  int violations = 0;
  for (int tau_bar = 1; tau_bar <= 10; ++tau_bar) {
    MultiplierState state(3, alpha, std::nullopt, 2 * tau_bar + 1);
    for (int k = 0; k < 2000; ++k) {
      Vec inc(3);
      for (double& v : inc) v = alpha * rng.uniform(-gbar, gbar);
      state.advance(inc);
      std::vector<int> delays = {rng.uniform_int(0, tau_bar),
                                 rng.uniform_int(0, tau_bar),
                                 rng.uniform_int(0, tau_bar)};
      Vec mu = delayed_multiplier_view(state, delays, tau_bar);
      if (dist_inf(state.lambda(), mu) > alpha * gbar * tau_bar + 1e-12)
        ++violations;
    }
  }
  report(10, "delayed-read certificate", violations == 0, t.seconds(),
         std::to_string(violations) + " violations");
}

}  // namespace

int main() {
  criterion_link();
  criterion_skorokhod();
  criterion_continuity();
  criterion_running_average();
  criterion_tracker();
  criterion_descent();
  criterion_sandwich();
  criterion_unsync();
  criterion_stolyar();
  criterion_delay();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
