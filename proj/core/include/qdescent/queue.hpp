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

#ifndef QDESCENT_QUEUE_HPP_
#define QDESCENT_QUEUE_HPP_

#include <deque>
#include <optional>

#include "qdescent/types.hpp"

namespace qdescent {

// Element-wise reflected update [lambda + increment]^+, truncated at clip
// when set.
Vec queue_update(const Vec& lambda, const Vec& increment,
                 std::optional<double> clip = std::nullopt);

// Closed form for the reflected random walk lambda_{k+1} = [lambda_k + x_k]^+:
// max of the largest suffix sum and the reflected full sum. Empty input
// returns lambda1.
double skorokhod_closed_form(double lambda1, const Vec& increments);

struct QueueDistanceReport {
  Vec lhs;  // |lambda_{k+1} - mu_{k+1}| per prefix
  Vec rhs;  // 2 * max over prefixes of |sum (x - y)| per prefix
  bool bounded = true;
};
// Runs both reflected recursions from the common start and reports the
// continuity bound alongside the realised distance at every prefix.
QueueDistanceReport queue_distance_bound(const Vec& x_seq, const Vec& y_seq,
                                         double start);

// z <- (1 - beta) z + beta x
Vec running_average_step(const Vec& z, const Vec& x, double beta);

// Running prefix sums of (x - y) with the max absolute prefix retained.
class IncrementLog {
 public:
  explicit IncrementLog(int dim) : partial_(dim, 0.0) {}
  void record(const Vec& x, const Vec& y);
  const Vec& partial_sums() const { return partial_; }
  double max_abs_partial() const { return max_abs_; }

 private:
  Vec partial_;
  double max_abs_ = 0.0;
};

// Exact multiplier with an approximate companion, scaled-queue view, and a
// bounded history for delayed reads. Single owner per solver run.
class MultiplierState {
 public:
  MultiplierState(int m, double alpha, std::optional<double> clip = std::nullopt,
                  int history_depth = 0);

  void advance(const Vec& lambda_increment);          // updates lambda + history
  void set_mu(Vec mu);
  void advance_mu(const Vec& mu_increment);           // [mu + inc]^{[0,clip]}

  const Vec& lambda() const { return lambda_; }
  const Vec& mu() const { return mu_; }
  Vec scaled_queue() const { return scale(mu_, 1.0 / alpha_); }
  double alpha() const { return alpha_; }
  std::optional<double> clip() const { return clip_; }

  // lambda^{(i)} from delays[i] steps ago. Throws when a delay exceeds the
  // stored history.
  Vec delayed_view(const std::vector<int>& delays) const;
  int history_size() const { return static_cast<int>(history_.size()); }

  // Diagnostic: ||lambda - mu||_inf / alpha against a declared certificate.
  double certificate_gap() const { return dist_inf(lambda_, mu_) / alpha_; }

 private:
  Vec lambda_, mu_;
  double alpha_;
  std::optional<double> clip_;
  int history_depth_;
  std::deque<Vec> history_;  // front() is current lambda
};

Vec delayed_multiplier_view(const MultiplierState& state,
                            const std::vector<int>& delays, int tau_bar);

// Increment builders so any solver can plug in the multiplier update rule.
// Linear: A x - b_k. Nonlinear sampled: g_k(x_k). Nonlinear linearised:
// g(z_k) + Jg(z_k) (x_k - z_k).
Vec linear_increment(const Mat& A, const Vec& x, const Vec& b_k);
Vec linearized_increment(const VecFn& g, const std::function<Mat(const Vec&)>& jac,
                         const Vec& z, const Vec& x);

}  // namespace qdescent

#endif  // QDESCENT_QUEUE_HPP_
