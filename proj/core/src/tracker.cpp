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

#include "qdescent/simplex.hpp"

namespace qdescent {

namespace {
constexpr double kSimplexTol = 1e-9;

// Gaussian elimination for the barycentric system [X; 1^T] a = [z; 1] when
// |D| <= n+1 and the actions are affinely independent.
std::optional<Vec> barycentric_solve(const std::vector<Vec>& actions,
                                     const Vec& z) {
  const std::size_t cols = actions.size();
  const std::size_t n = z.size();
  if (cols > n + 1) return std::nullopt;
  const std::size_t rows = n + 1;
  std::vector<Vec> M(rows, Vec(cols + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cols; ++j) M[i][j] = actions[j][i];
    M[i][cols] = z[i];
  }
  for (std::size_t j = 0; j < cols; ++j) M[n][j] = 1.0;
  M[n][cols] = 1.0;

  std::vector<std::size_t> pivot_row(cols, rows);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = r;
    for (std::size_t i = r + 1; i < rows; ++i)
      if (std::fabs(M[i][c]) > std::fabs(M[best][c])) best = i;
    if (std::fabs(M[best][c]) < 1e-12) return std::nullopt;  // dependent
    std::swap(M[best], M[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      double f = M[i][c] / M[r][c];
      if (f == 0.0) continue;
      for (std::size_t j = c; j <= cols; ++j) M[i][j] -= f * M[r][j];
    }
    pivot_row[c] = r++;
  }
  Vec a(cols, 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    if (pivot_row[c] == rows) return std::nullopt;
    a[c] = M[pivot_row[c]][cols] / M[pivot_row[c]][c];
    if (a[c] < -kSimplexTol) return std::nullopt;  // outside the hull
    a[c] = std::max(0.0, a[c]);
  }
  // Remaining rows must be consistent.
  for (; r < rows; ++r)
    if (std::fabs(M[r][cols]) > 1e-8) return std::nullopt;
  return a;
}

}  // namespace

ActionTracker::ActionTracker(std::vector<Vec> actions, double drift_floor,
                             SelectionRule rule)
    : actions_(std::move(actions)),
      floor_(drift_floor),
      rule_(rule),
      drift_(actions_.size(), 0.0) {
  if (actions_.empty()) throw std::invalid_argument("empty action set");
  if (floor_ < 1.0)
    throw std::invalid_argument("drift floor must be at least 1");
  Mat X(actions_.front().size(), Vec(actions_.size(), 0.0));
  for (std::size_t j = 0; j < actions_.size(); ++j)
    for (std::size_t i = 0; i < actions_[j].size(); ++i)
      X[i][j] = actions_[j][i];
  x_norm_inf_ = induced_inf_norm(X);
}

Vec ActionTracker::decompose(const Vec& z) const {
  // Exact vertex hit first.
  for (std::size_t j = 0; j < actions_.size(); ++j) {
    if (dist_inf(z, actions_[j]) <= 1e-12) {
      Vec a(actions_.size(), 0.0);
      a[j] = 1.0;
      return a;
    }
  }
  if (actions_.size() <= z.size() + 1) {
    if (auto a = barycentric_solve(actions_, z)) return *a;
  }
  auto a = hull_weights(actions_, z, kSimplexTol);
  if (!a) throw std::invalid_argument("point is outside conv(D)");
  return *a;
}

ActionTracker::Selection ActionTracker::select(const Vec& weights) {
  if (weights.size() != actions_.size())
    throw std::invalid_argument("weight dimension mismatch");
  double sum = 0.0;
  for (double w : weights) {
    if (w < -kSimplexTol) throw std::invalid_argument("negative weight");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-7)
    throw std::invalid_argument("weights do not sum to one");

  // Eligible coordinates keep the drift above the floor after the pull.
  std::size_t chosen = actions_.size();
  if (rule_ == SelectionRule::kFirstEligible) {
    for (std::size_t j = 0; j < actions_.size(); ++j) {
      if (drift_[j] + weights[j] >= 1.0 - floor_ - 1e-12) {
        chosen = j;
        break;
      }
    }
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < actions_.size(); ++j) {
      if (drift_[j] + weights[j] < 1.0 - floor_ - 1e-12) continue;
      double worst = 0.0;
      for (std::size_t i = 0; i < actions_.size(); ++i) {
        double v = drift_[i] + weights[i] - (i == j ? 1.0 : 0.0);
        worst = std::max(worst, std::fabs(v));
      }
      if (worst < best - 1e-15) {
        best = worst;
        chosen = j;
      }
    }
  }
  if (chosen == actions_.size())
    throw std::logic_error("no eligible action; drift floor below 1?");

  for (std::size_t i = 0; i < actions_.size(); ++i) drift_[i] += weights[i];
  drift_[chosen] -= 1.0;
  return Selection{chosen, actions_[chosen]};
}

double ActionTracker::drift_sum() const {
  double s = 0.0;
  for (double v : drift_) s += v;
  return s;
}

double ActionTracker::deviation_bound() const {
  return (static_cast<double>(actions_.size()) - 1.0) * floor_ * x_norm_inf_;
}

TrackReport track_sequence(ActionTracker& tracker,
                           const std::vector<Vec>& z_seq) {
  TrackReport rep;
  rep.bound = tracker.deviation_bound();
  if (z_seq.empty()) return rep;
  rep.prefix_sum.assign(z_seq.front().size(), 0.0);
  for (const Vec& z : z_seq) {
    auto sel = tracker.step(z);
    rep.xs.push_back(sel.action);
    for (std::size_t i = 0; i < rep.prefix_sum.size(); ++i)
      rep.prefix_sum[i] += z[i] - sel.action[i];
    rep.max_prefix_deviation =
        std::max(rep.max_prefix_deviation, norm_inf(rep.prefix_sum));
  }
  return rep;
}

TrackReport two_timescale_track(ActionTracker& tracker,
                                const std::vector<Vec>& z_slow, int hold) {
  if (hold < 1) throw std::invalid_argument("hold must be >= 1");
  std::vector<Vec> fast;
  fast.reserve(z_slow.size() * static_cast<std::size_t>(hold));
  for (const Vec& z : z_slow)
    for (int h = 0; h < hold; ++h) fast.push_back(z);
  return track_sequence(tracker, fast);
}

}  // namespace qdescent
