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

#ifndef QDESCENT_TRACKER_HPP_
#define QDESCENT_TRACKER_HPP_

#include "qdescent/types.hpp"

namespace qdescent {

enum class SelectionRule {
  kMinInfNorm,     // argmin over eligible unit vectors of ||S + a - e_j||_inf
  kFirstEligible,  // lowest index j with S_j + a_j >= 1 - floor
};

// Online selection of discrete actions x_k in D tracking a continuous
// sequence z_k in conv(D) with uniformly bounded prefix deviation
// ||sum(z_i - x_i)||_inf. State is the cumulative simplex-coordinate drift S
// with sum(S) = 0 and S >= -floor elementwise.
class ActionTracker {
 public:
  explicit ActionTracker(std::vector<Vec> actions, double drift_floor = 1.0,
                         SelectionRule rule = SelectionRule::kMinInfNorm);

  // Convex-combination weights of z over the actions: at most n+1 nonzero
  // entries, residual below 1e-9. Throws when z is outside conv(D).
  Vec decompose(const Vec& z) const;

  struct Selection {
    std::size_t index;
    Vec action;
  };
  // Picks the unit coordinate for the next action and folds a - e_j into S.
  Selection select(const Vec& weights);
  Selection step(const Vec& z) { return select(decompose(z)); }

  const std::vector<Vec>& actions() const { return actions_; }
  const Vec& drift() const { return drift_; }
  double drift_floor() const { return floor_; }
  double drift_inf_norm() const { return norm_inf(drift_); }
  double drift_sum() const;

  // (|D| - 1) * floor * ||X||_inf with the induced (max row sum) norm.
  double deviation_bound() const;

 private:
  std::vector<Vec> actions_;
  double floor_;
  SelectionRule rule_;
  Vec drift_;           // S
  double x_norm_inf_;   // induced infinity norm of the action matrix
};

struct TrackReport {
  std::vector<Vec> xs;
  Vec prefix_sum;               // sum(z_i - x_i), final
  double max_prefix_deviation = 0.0;
  double bound = 0.0;           // theoretical prefix bound
};

TrackReport track_sequence(ActionTracker& tracker,
                           const std::vector<Vec>& z_seq);

// Feeds each decision `hold` times so actions run on the fast clock while
// decisions change on the slow one.
TrackReport two_timescale_track(ActionTracker& tracker,
                                const std::vector<Vec>& z_slow, int hold);

}  // namespace qdescent

#endif  // QDESCENT_TRACKER_HPP_
