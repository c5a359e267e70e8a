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

#include "qdescent/queue.hpp"

#include "vendor/doctest.h"

using namespace qdescent;

TEST_CASE("reflected queue update") {
  CHECK(queue_update({2.0}, {-5.0}) == Vec{0.0});
  CHECK(queue_update({2.0}, {10.0}, 5.0) == Vec{5.0});
  Vec r = queue_update({1.0, 0.0}, {0.3, -0.2});
  CHECK(r[0] == doctest::Approx(1.3));
  CHECK(r[1] == doctest::Approx(0.0));
}

TEST_CASE("skorokhod closed form") {
  CHECK(skorokhod_closed_form(0.0, {1.0, -2.0, 3.0}) == doctest::Approx(3.0));
  CHECK(skorokhod_closed_form(0.0, {-1.0, -0.5, -2.0}) == doctest::Approx(0.0));
  CHECK(skorokhod_closed_form(5.0, {-1.0, -1.0}) == doctest::Approx(3.0));
  CHECK(skorokhod_closed_form(0.7, {}) == doctest::Approx(0.7));

  SUBCASE("matches iterated recursion") {
    Rng rng(17);
    for (int trial = 0; trial < 500; ++trial) {
      double lam1 = rng.uniform(0.0, 4.0);
      int len = rng.uniform_int(1, 200);
      Vec inc(len);
      Vec lam = {lam1};
      for (double& v : inc) {
        v = rng.uniform(-3.0, 3.0);
        lam = queue_update(lam, {v});
      }
      double closed = skorokhod_closed_form(lam1, inc);
      CHECK(std::fabs(closed - lam[0]) <=
            1e-12 * std::max(1.0, std::fabs(lam[0])));
    }
  }
}

TEST_CASE("queue continuity bound") {
  QueueDistanceReport same =
      queue_distance_bound({1.0, -0.5, 2.0}, {1.0, -0.5, 2.0}, 0.3);
  CHECK(same.bounded);
  for (double d : same.lhs) CHECK(d == doctest::Approx(0.0));

  QueueDistanceReport r =
      queue_distance_bound({1.0, 1.0, 1.0}, {0.0, 0.0, 0.0}, 0.0);
  CHECK(r.lhs.back() == doctest::Approx(3.0));
  CHECK(r.rhs.back() == doctest::Approx(6.0));
  CHECK(r.bounded);

  SUBCASE("bound holds on random pairs") {
    Rng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
      int len = rng.uniform_int(1, 60);
      Vec x(len), y(len);
      for (int i = 0; i < len; ++i) {
        x[i] = rng.uniform(-2.0, 2.0);
        y[i] = rng.uniform(-2.0, 2.0);
      }
      QueueDistanceReport rr = queue_distance_bound(x, y, rng.uniform(0.0, 2.0));
      CHECK(rr.bounded);
      for (std::size_t k = 0; k < rr.lhs.size(); ++k)
        CHECK(rr.lhs[k] <= rr.rhs[k] + 1e-12);
    }
  }
}

TEST_CASE("running average step") {
  CHECK(running_average_step({0.4}, {0.4}, 0.3)[0] == doctest::Approx(0.4));
  CHECK(running_average_step({0.0}, {1.0}, 0.1)[0] == doctest::Approx(0.1));
  CHECK_THROWS_AS(running_average_step({0.0}, {1.0}, 1.5), std::invalid_argument);

  SUBCASE("geometric approach and bounded increment log") {
    const double c = 0.8, beta = 0.2;
    Vec z = {0.0};
    IncrementLog log(1);
    for (int k = 0; k < 400; ++k) {
      log.record(z, {c});
      z = running_average_step(z, {c}, beta);
    }
    CHECK(z[0] == doctest::Approx(c).epsilon(1e-9));
    CHECK(log.max_abs_partial() <= c / beta + 1e-9);
  }
}

TEST_CASE("rescaling identity") {
  // alpha Q and mu follow identical recursions when Q uses unscaled
  // increments; the stored doubles must match exactly.
  const double alpha = 0.1;
  Rng rng(5);
  Vec q = {0.0, 0.0};
  MultiplierState state(2, alpha);
  for (int k = 0; k < 2000; ++k) {
    Vec inc = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    q = queue_update(q, inc);
    state.advance_mu(scale(inc, alpha));
    // same reflected recursion computed in the scaled variable
    for (int i = 0; i < 2; ++i)
      CHECK(state.scaled_queue()[i] == doctest::Approx(q[i]).epsilon(1e-10));
  }
}

TEST_CASE("multiplier state history and delayed views") {
  MultiplierState state(2, 0.5, std::nullopt, 6);
  // tau = 0 always reproduces lambda
  state.advance({0.1, 0.2});
  CHECK(delayed_multiplier_view(state, {0, 0}, 5) == state.lambda());

  // constant history: any delay reproduces lambda
  MultiplierState flat(1, 1.0, std::nullopt, 4);
  for (int k = 0; k < 6; ++k) flat.advance({0.0});
  CHECK(delayed_multiplier_view(flat, {3}, 3) == flat.lambda());

  CHECK_THROWS_AS(state.delayed_view({100, 0}), std::out_of_range);

  SUBCASE("delay gap bounded by alpha gbar tau_bar") {
    const double alpha = 0.2, gbar = 1.5;
    const int tau_bar = 5;
    Rng rng(9);
    MultiplierState s(3, alpha, std::nullopt, 2 * tau_bar + 1);
    for (int k = 0; k < 500; ++k) {
      Vec inc(3);
      for (double& v : inc) v = alpha * rng.uniform(-gbar, gbar);
      s.advance(inc);
      std::vector<int> delays = {rng.uniform_int(0, tau_bar),
                                 rng.uniform_int(0, tau_bar),
                                 rng.uniform_int(0, tau_bar)};
      Vec mu = delayed_multiplier_view(s, delays, tau_bar);
      CHECK(dist_inf(s.lambda(), mu) <= alpha * gbar * tau_bar + 1e-12);
    }
  }
}

TEST_CASE("one-sided bound under zero start") {
  // Reflected walk from zero equals prefix minus running minimum, so it is
  // capped by the prefix spread even when the sum is unbounded below.
  Rng rng(31);
  Vec mu = {0.0};
  double prefix = 0.0, min_prefix = 0.0, max_prefix = 0.0;
  for (int k = 0; k < 2000; ++k) {
    double y = rng.uniform(-2.0, 0.5);
    mu = queue_update(mu, {y});
    prefix += y;
    min_prefix = std::min(min_prefix, prefix);
    max_prefix = std::max(max_prefix, prefix);
    CHECK(mu[0] == doctest::Approx(prefix - min_prefix).epsilon(1e-10));
    CHECK(mu[0] <= max_prefix - min_prefix + 1e-9);
  }
}

TEST_CASE("increment builders") {
  Mat A = {{1.0, 0.0}, {0.0, 2.0}};
  Vec inc = linear_increment(A, {1.0, 1.0}, {0.5, 0.5});
  CHECK(inc[0] == doctest::Approx(0.5));
  CHECK(inc[1] == doctest::Approx(1.5));

  // linearised nonlinear increment agrees with g for affine g
  VecFn g = [](const Vec& z) { return Vec{z[0] * z[0] - 1.0}; };
  auto jac = [](const Vec& z) { return Mat{{2.0 * z[0]}}; };
  Vec lin = linearized_increment(g, jac, {1.0}, {1.5});
  CHECK(lin[0] == doctest::Approx(0.0 + 2.0 * 0.5));
}
