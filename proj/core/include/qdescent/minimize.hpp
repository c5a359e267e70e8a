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

#ifndef QDESCENT_MINIMIZE_HPP_
#define QDESCENT_MINIMIZE_HPP_

#include "qdescent/types.hpp"

namespace qdescent {

struct BoxMinResult {
  Vec z;
  double value = 0.0;
  double stationarity = 0.0;  // projected-gradient residual at z
  int iterations = 0;
  bool converged = false;
};

// Projected gradient with Armijo backtracking on a box. Reference inner
// solver for dual evaluations and descent-gap oracles.
BoxMinResult minimize_on_box(const ScalarFn& f, const VecFn& grad,
                             const Vec& lo, const Vec& hi, Vec z0,
                             double tol = 1e-8, int max_iters = 10000);

// Golden-section search for a convex function of one variable.
double minimize_scalar_convex(const std::function<double(double)>& f,
                              double lo, double hi, double tol = 1e-10);

// Central finite differences, step 1e-6; used when no analytic subgradient
// is supplied.
Vec finite_difference_gradient(const ScalarFn& f, const Vec& z,
                               double step = 1e-6);

}  // namespace qdescent

#endif  // QDESCENT_MINIMIZE_HPP_
