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

#ifndef QDESCENT_ARRIVALS_HPP_
#define QDESCENT_ARRIVALS_HPP_

#include "qdescent/types.hpp"

namespace qdescent {

enum class ArrivalKind {
  kConstant,   // b_k = b
  kDither,     // integer-valued, |sum (b_i - b)| < 1 for all prefixes
  kBernoulli,  // {0,1}-valued, P(b_k = 1) = b
};

// Per-slot arrival sequence b_k with mean rate b per coordinate. Dither uses
// the deterministic rounding b_k = ceil(k b) - ceil((k-1) b), whose prefix
// deviation ceil(kb) - kb stays in [0,1).
class ArrivalProcess {
 public:
  ArrivalProcess(ArrivalKind kind, Vec rates, std::uint64_t seed = 0);

  // b_k for slot k (1-based).
  Vec at(std::size_t k);

  const Vec& rates() const { return rates_; }
  ArrivalKind kind() const { return kind_; }
  // max over emitted prefixes of ||sum (b_i - b)||_inf; exact for kDither
  // and kConstant, realised for kBernoulli.
  double max_prefix_deviation() const { return max_dev_; }

 private:
  ArrivalKind kind_;
  Vec rates_;
  Rng rng_;
  Vec prefix_;  // sum (b_i - b), kBernoulli bookkeeping
  std::size_t last_k_ = 0;
  double max_dev_ = 0.0;
};

}  // namespace qdescent

#endif  // QDESCENT_ARRIVALS_HPP_
