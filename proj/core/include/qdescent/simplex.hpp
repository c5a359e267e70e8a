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

#ifndef QDESCENT_SIMPLEX_HPP_
#define QDESCENT_SIMPLEX_HPP_

#include <optional>

#include "qdescent/types.hpp"

namespace qdescent {

// Finds convex-combination weights a >= 0, sum(a) = 1 with sum_j a_j D[j] = z.
// Phase-1 simplex with Bland's rule (lowest-index pivoting), so the result is
// a basic feasible solution with at most n+1 nonzero weights. Returns nullopt
// when z is not in conv(D) to within tol.
std::optional<Vec> hull_weights(const std::vector<Vec>& points, const Vec& z,
                                double tol = 1e-9);

inline bool in_hull(const std::vector<Vec>& points, const Vec& z,
                    double tol = 1e-9) {
  return hull_weights(points, z, tol).has_value();
}

}  // namespace qdescent

#endif  // QDESCENT_SIMPLEX_HPP_
