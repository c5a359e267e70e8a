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

#include "qdescent/minimize.hpp"

namespace qdescent {

namespace {

Vec clamp_to_box(Vec z, const Vec& lo, const Vec& hi) {
  for (std::size_t i = 0; i < z.size(); ++i)
    z[i] = std::min(hi[i], std::max(lo[i], z[i]));
  return z;
}

}  // namespace

BoxMinResult minimize_on_box(const ScalarFn& f, const VecFn& grad,
                             const Vec& lo, const Vec& hi, Vec z0, double tol,
                             int max_iters) {
  BoxMinResult res;
  Vec z = clamp_to_box(std::move(z0), lo, hi);
  double fz = f(z);
  double step = 1.0;
  for (int it = 0; it < max_iters; ++it) {
    Vec g = grad(z);
    Vec trial = clamp_to_box(sub(z, scale(g, step)), lo, hi);
    double ft = f(trial);
    int backtracks = 0;
    while (ft > fz - 1e-4 * dot(g, sub(z, trial)) && backtracks < 60) {
      step *= 0.5;
      trial = clamp_to_box(sub(z, scale(g, step)), lo, hi);
      ft = f(trial);
      ++backtracks;
    }
    double moved = dist_inf(trial, z);
    // Projected-gradient residual with unit step measures stationarity.
    Vec probe = clamp_to_box(sub(z, g), lo, hi);
    res.stationarity = dist_inf(probe, z);
    z = std::move(trial);
    fz = ft;
    res.iterations = it + 1;
    if (res.stationarity <= tol && moved <= tol) {
      res.converged = true;
      break;
    }
    if (backtracks == 0) step = std::min(step * 2.0, 1e6);
  }
  res.z = std::move(z);
  res.value = fz;
  return res;
}

double minimize_scalar_convex(const std::function<double(double)>& f,
                              double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  double mid = 0.5 * (a + b);
  // Endpoints can win for monotone objectives.
  if (f(lo) <= f(mid) && f(lo) <= f(hi)) return lo;
  if (f(hi) < f(mid)) return hi;
  return mid;
}

Vec finite_difference_gradient(const ScalarFn& f, const Vec& z, double step) {
  Vec g(z.size(), 0.0);
  Vec w = z;
  for (std::size_t i = 0; i < z.size(); ++i) {
    w[i] = z[i] + step;
    double fp = f(w);
    w[i] = z[i] - step;
    double fm = f(w);
    w[i] = z[i];
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

}  // namespace qdescent
