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

namespace qdescent {

Vec queue_update(const Vec& lambda, const Vec& increment,
                 std::optional<double> clip) {
  Vec out(lambda.size());
  const double hi = clip.value_or(std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < lambda.size(); ++i)
    out[i] = std::min(hi, std::max(0.0, lambda[i] + increment[i]));
  return out;
}

double skorokhod_closed_form(double lambda1, const Vec& increments) {
  if (lambda1 < 0.0) throw std::invalid_argument("negative initial value");
  if (increments.empty()) return lambda1;
  // Scan from the end so suffix sums are available in one pass.
  double suffix = 0.0, max_suffix = -std::numeric_limits<double>::infinity();
  for (auto it = increments.rbegin(); it != increments.rend(); ++it) {
    suffix += *it;
    max_suffix = std::max(max_suffix, suffix);
  }
  const double reflected = std::max(0.0, suffix + lambda1);
  return std::max(max_suffix, reflected);
}

QueueDistanceReport queue_distance_bound(const Vec& x_seq, const Vec& y_seq,
                                         double start) {
  if (x_seq.size() != y_seq.size())
    throw std::invalid_argument("sequences must have equal length");
  QueueDistanceReport rep;
  double lam = start, mu = start;
  double prefix = 0.0, max_prefix = 0.0;
  for (std::size_t k = 0; k < x_seq.size(); ++k) {
    lam = std::max(0.0, lam + x_seq[k]);
    mu = std::max(0.0, mu + y_seq[k]);
    prefix += x_seq[k] - y_seq[k];
    max_prefix = std::max(max_prefix, std::fabs(prefix));
    rep.lhs.push_back(std::fabs(lam - mu));
    rep.rhs.push_back(2.0 * max_prefix);
    if (rep.lhs.back() > rep.rhs.back() + 1e-12) rep.bounded = false;
  }
  return rep;
}

Vec running_average_step(const Vec& z, const Vec& x, double beta) {
  if (beta <= 0.0 || beta >= 1.0)
    throw std::invalid_argument("beta must lie in (0,1)");
  Vec out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    out[i] = (1.0 - beta) * z[i] + beta * x[i];
  return out;
}

void IncrementLog::record(const Vec& x, const Vec& y) {
  for (std::size_t i = 0; i < partial_.size(); ++i) {
    partial_[i] += x[i] - y[i];
    max_abs_ = std::max(max_abs_, std::fabs(partial_[i]));
  }
}

MultiplierState::MultiplierState(int m, double alpha,
                                 std::optional<double> clip, int history_depth)
    : lambda_(m, 0.0),
      mu_(m, 0.0),
      alpha_(alpha),
      clip_(clip),
      history_depth_(history_depth) {
  if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  if (history_depth_ > 0) history_.push_front(lambda_);
}

void MultiplierState::advance(const Vec& lambda_increment) {
  lambda_ = queue_update(lambda_, lambda_increment, clip_);
  if (history_depth_ > 0) {
    history_.push_front(lambda_);
    while (static_cast<int>(history_.size()) > history_depth_)
      history_.pop_back();
  }
}

void MultiplierState::set_mu(Vec mu) { mu_ = std::move(mu); }

void MultiplierState::advance_mu(const Vec& mu_increment) {
  mu_ = queue_update(mu_, mu_increment, clip_);
}

Vec MultiplierState::delayed_view(const std::vector<int>& delays) const {
  Vec out(lambda_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int tau = delays[i];
    if (tau < 0 || tau >= history_depth_)
      throw std::out_of_range("delay exceeds stored multiplier history");
    // Before the history fills, the oldest entry is the initial multiplier.
    const auto idx = std::min(static_cast<std::size_t>(tau), history_.size() - 1);
    out[i] = history_[idx][i];
  }
  return out;
}

Vec delayed_multiplier_view(const MultiplierState& state,
                            const std::vector<int>& delays, int tau_bar) {
  for (int tau : delays)
    if (tau > tau_bar) throw std::out_of_range("delay exceeds tau_bar");
  return state.delayed_view(delays);
}

Vec linear_increment(const Mat& A, const Vec& x, const Vec& b_k) {
  Vec inc = matvec(A, x);
  for (std::size_t j = 0; j < inc.size(); ++j) inc[j] -= b_k[j];
  return inc;
}

Vec linearized_increment(const VecFn& g,
                         const std::function<Mat(const Vec&)>& jac,
                         const Vec& z, const Vec& x) {
  Vec inc = g(z);
  Mat J = jac(z);
  Vec d = sub(x, z);
  for (std::size_t j = 0; j < inc.size(); ++j) inc[j] += dot(J[j], d);
  return inc;
}

}  // namespace qdescent
