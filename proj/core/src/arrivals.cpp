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

#include "qdescent/arrivals.hpp"

namespace qdescent {

ArrivalProcess::ArrivalProcess(ArrivalKind kind, Vec rates, std::uint64_t seed)
    : kind_(kind),
      rates_(std::move(rates)),
      rng_(seed),
      prefix_(rates_.size(), 0.0) {
  if (rates_.empty()) throw std::invalid_argument("empty rate vector");
  for (double b : rates_)
    if (b < 0.0) throw std::invalid_argument("negative arrival rate");
  if (kind_ == ArrivalKind::kBernoulli) {
    for (double b : rates_)
      if (b > 1.0)
        throw std::invalid_argument("Bernoulli arrivals need rates in [0,1]");
  }
}

Vec ArrivalProcess::at(std::size_t k) {
  if (k == 0) throw std::invalid_argument("slots are 1-based");
  Vec out(rates_.size());
  switch (kind_) {
    case ArrivalKind::kConstant:
      out = rates_;
      break;
    case ArrivalKind::kDither:
      for (std::size_t i = 0; i < rates_.size(); ++i) {
        const double b = rates_[i];
        out[i] = std::ceil(static_cast<double>(k) * b) -
                 std::ceil(static_cast<double>(k - 1) * b);
        prefix_[i] = std::ceil(static_cast<double>(k) * b) -
                     static_cast<double>(k) * b;
      }
      max_dev_ = std::max(max_dev_, norm_inf(prefix_));
      break;
    case ArrivalKind::kBernoulli:
      if (k != last_k_ + 1)
        throw std::invalid_argument("random arrivals must be drawn in order");
      for (std::size_t i = 0; i < rates_.size(); ++i) {
        out[i] = rng_.bernoulli(rates_[i]) ? 1.0 : 0.0;
        prefix_[i] += out[i] - rates_[i];
      }
      max_dev_ = std::max(max_dev_, norm_inf(prefix_));
      break;
  }
  last_k_ = k;
  return out;
}

}  // namespace qdescent
