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

#include "qdescent/simplex.hpp"

#include <cstddef>
#include <limits>

namespace qdescent {

namespace {
constexpr double kPivotTol = 1e-11;
}

std::optional<Vec> hull_weights(const std::vector<Vec>& points, const Vec& z,
                                double tol) {
  if (points.empty()) return std::nullopt;
  const std::size_t n = z.size();
  const std::size_t cols = points.size();
  const std::size_t rows = n + 1;  // hull equations plus the weight-sum row

  // Phase-1 LP: minimise the sum of artificials subject to
  //   [X; 1^T] a + artificials = [z; 1],  a >= 0.
  // Tableau: rows x (cols + rows) plus rhs column; artificials start basic.
  std::vector<Vec> T(rows, Vec(cols + rows + 1, 0.0));
  for (std::size_t i = 0; i < rows; ++i) {
    double rhs = (i < n) ? z[i] : 1.0;
    for (std::size_t j = 0; j < cols; ++j)
      T[i][j] = (i < n) ? points[j][i] : 1.0;
    if (rhs < 0.0) {
      for (std::size_t j = 0; j < cols; ++j) T[i][j] = -T[i][j];
      rhs = -rhs;
    }
    T[i][cols + i] = 1.0;
    T[i][cols + rows] = rhs;
  }
  std::vector<std::size_t> basis(rows);
  Vec cost(cols + rows + 1, 0.0);  // reduced costs of phase-1 objective
  for (std::size_t i = 0; i < rows; ++i) {
    basis[i] = cols + i;
    for (std::size_t j = 0; j <= cols + rows; ++j) cost[j] -= T[i][j];
  }

  // Bland's rule guarantees termination under degeneracy.
  const std::size_t max_iters = 50 * (cols + rows) + 200;
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    std::size_t enter = cols + rows;
    for (std::size_t j = 0; j < cols; ++j) {
      if (cost[j] < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter == cols + rows) break;  // optimal

    std::size_t leave = rows;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows; ++i) {
      if (T[i][enter] > kPivotTol) {
        double ratio = T[i][cols + rows] / T[i][enter];
        if (ratio < best_ratio - kPivotTol ||
            (ratio < best_ratio + kPivotTol &&
             (leave == rows || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave == rows) break;  // unbounded; cannot happen for this LP

    const double piv = T[leave][enter];
    for (std::size_t j = 0; j <= cols + rows; ++j) T[leave][j] /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave) continue;
      const double factor = T[i][enter];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= cols + rows; ++j)
        T[i][j] -= factor * T[leave][j];
    }
    {
      const double factor = cost[enter];
      for (std::size_t j = 0; j <= cols + rows; ++j)
        cost[j] -= factor * T[leave][j];
    }
    basis[leave] = enter;
  }

  double infeasibility = 0.0;
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] >= cols) infeasibility += T[i][cols + rows];
  if (infeasibility > tol) return std::nullopt;

  Vec a(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] < cols) a[basis[i]] = std::max(0.0, T[i][cols + rows]);

  // Residual check guards against an ill-conditioned tableau.
  Vec r(n, 0.0);
  double wsum = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    wsum += a[j];
    for (std::size_t i = 0; i < n; ++i) r[i] += a[j] * points[j][i];
  }
  for (std::size_t i = 0; i < n; ++i) r[i] -= z[i];
  if (norm_inf(r) > 1e-7 || std::fabs(wsum - 1.0) > 1e-7) return std::nullopt;
  return a;
}

}  // namespace qdescent
