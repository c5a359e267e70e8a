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

#include "qdescent/tracker.hpp"

#include "vendor/doctest.h"

using namespace qdescent;

namespace {

std::vector<Vec> scalar_actions() { return {{0.0}, {1.0}}; }

}  // namespace

TEST_CASE("simplex decomposition") {
  ActionTracker t(scalar_actions());
  Vec a = t.decompose({0.6});
  CHECK(a[0] == doctest::Approx(0.4));
  CHECK(a[1] == doctest::Approx(0.6));

  // vertex gives a unit coordinate
  Vec av = t.decompose({1.0});
  CHECK(av[0] == doctest::Approx(0.0));
  CHECK(av[1] == doctest::Approx(1.0));

  ActionTracker tri({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  Vec at = tri.decompose({0.25, 0.25});
  CHECK(at[0] == doctest::Approx(0.5));
  CHECK(at[1] == doctest::Approx(0.25));
  CHECK(at[2] == doctest::Approx(0.25));

  CHECK_THROWS_AS(tri.decompose({0.9, 0.9}), std::invalid_argument);
}

TEST_CASE("selection hand trace") {
  ActionTracker t(scalar_actions());
  auto s1 = t.step({0.6});
  CHECK(s1.index == 1);
  CHECK(s1.action == Vec{1.0});
  CHECK(t.drift()[0] == doctest::Approx(0.4));
  CHECK(t.drift()[1] == doctest::Approx(-0.4));

  auto s2 = t.step({0.6});
  CHECK(s2.index == 0);
  CHECK(s2.action == Vec{0.0});
  CHECK(t.drift()[0] == doctest::Approx(-0.2));
  CHECK(t.drift()[1] == doctest::Approx(0.2));
}

TEST_CASE("vertex input leaves drift untouched") {
  ActionTracker t(scalar_actions());
  auto s = t.step({1.0});
  CHECK(s.index == 1);
  CHECK(t.drift_inf_norm() == doctest::Approx(0.0));
}

TEST_CASE("tracked sequence bounds") {
  SUBCASE("fig2 sequence") {
    ActionTracker t(scalar_actions());
    std::vector<Vec> zs;
    for (int k = 1; k <= 1000; ++k) zs.push_back({0.75 / k + 0.25});
    TrackReport r = track_sequence(t, zs);
    CHECK(t.deviation_bound() == doctest::Approx(1.0));
    CHECK(r.max_prefix_deviation <= 1.0 + 1e-9);
  }

  SUBCASE("constant vertex sequence") {
    ActionTracker t(scalar_actions());
    std::vector<Vec> zs(50, Vec{1.0});
    TrackReport r = track_sequence(t, zs);
    for (const Vec& x : r.xs) CHECK(x == Vec{1.0});
    CHECK(r.max_prefix_deviation == doctest::Approx(0.0));
  }

  SUBCASE("random triangle sequence") {
    std::vector<Vec> D = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    ActionTracker t(D);
    Rng rng(13);
    std::vector<Vec> zs;
    for (int k = 0; k < 10000; ++k) {
      double a = rng.uniform(), b = rng.uniform(0.0, (1.0 - a) * 0.999);
      zs.push_back({a, b});
    }
    TrackReport r = track_sequence(t, zs);
    CHECK(r.max_prefix_deviation <= t.deviation_bound() + 1e-9);
    CHECK(r.max_prefix_deviation <= 2.0 * 1.0 * 1.0 + 1e-9);
  }
}

TEST_CASE("invariants over long runs") {
  std::vector<Vec> D = {{0.0}, {1.0}};
  for (SelectionRule rule :
       {SelectionRule::kMinInfNorm, SelectionRule::kFirstEligible}) {
    ActionTracker t(D, 1.0, rule);
    Rng rng(7);
    for (int k = 0; k < 50000; ++k) {
      // mix random and adversarial alternation
      double z = (k % 3 == 0) ? (k % 2 ? 0.999 : 0.001) : rng.uniform();
      t.step({z});
      CHECK(std::fabs(t.drift_sum()) <= 1e-9);
      for (double s : t.drift()) CHECK(s >= -t.drift_floor() - 1e-9);
      CHECK(t.drift_inf_norm() <=
            (static_cast<double>(D.size()) - 1.0) * t.drift_floor() + 1e-9);
    }
  }
}

TEST_CASE("average convergence") {
  ActionTracker t(scalar_actions());
  Rng rng(41);
  double sum_z = 0.0, sum_x = 0.0;
  for (int k = 1; k <= 5000; ++k) {
    double z = rng.uniform();
    sum_z += z;
    sum_x += t.step({z}).action[0];
    CHECK(std::fabs(sum_z - sum_x) / k <= t.deviation_bound() / k + 1e-12);
  }
  CHECK(std::fabs(sum_z - sum_x) / 5000.0 <= 1e-3);
}

TEST_CASE("two-timescale tracking") {
  SUBCASE("hold one matches plain tracking") {
    ActionTracker t1(scalar_actions()), t2(scalar_actions());
    std::vector<Vec> zs;
    Rng rng(3);
    for (int k = 0; k < 200; ++k) zs.push_back({rng.uniform()});
    TrackReport a = track_sequence(t1, zs);
    TrackReport b = two_timescale_track(t2, zs, 1);
    CHECK(a.xs == b.xs);
  }

  SUBCASE("constant z counting") {
    ActionTracker t(scalar_actions());
    std::vector<Vec> zs(10, Vec{0.3});  // 10 slow decisions, hold 10
    TrackReport r = two_timescale_track(t, zs, 10);
    REQUIRE(r.xs.size() == 100);
    double ones = 0.0;
    for (const Vec& x : r.xs) ones += x[0];
    CHECK(std::fabs(ones - 30.0) <= 1.0);
    CHECK(r.max_prefix_deviation <= 1.0 + 1e-9);
  }

  SUBCASE("fig5 style run stays within bound") {
    ActionTracker t(scalar_actions());
    std::vector<Vec> zs;
    for (int k = 1; k <= 100; ++k) zs.push_back({0.75 / k + 0.25});
    TrackReport r = two_timescale_track(t, zs, 10);
    CHECK(r.xs.size() == 1000);
    CHECK(r.max_prefix_deviation <= t.deviation_bound() + 1e-9);
  }
}

TEST_CASE("selection rejects bad weights") {
  ActionTracker t(scalar_actions());
  CHECK_THROWS_AS(t.select({0.7, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(t.select({-0.1, 1.1}), std::invalid_argument);
}
