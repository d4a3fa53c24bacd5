// Copyright 2026 The fairbias Authors
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

// Balls into bins: loads, the top-k load N_k, and independent Poisson loads
// for comparison against the multinomial ones.

#ifndef FAIRBIAS_BALLS_BINS_HPP_
#define FAIRBIAS_BALLS_BINS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rng.hpp"

namespace fairbias {

using LoadVector = std::vector<std::int64_t>;

/// m balls, each independently uniform over n bins.
LoadVector sample_loads(int n, std::int64_t m, Rng& rng);

/// Sum of the k largest loads; 1 <= k <= n.
std::int64_t top_k_sum(std::span<const std::int64_t> loads, int k);

struct Estimate {
  double mean = 0;
  double stderr_ = 0;
};

/// N_k for n balls into n bins, averaged over trials.
Estimate estimate_Nk(int n, int k, int trials, Rng& rng);

/// n independent Poisson(mean) loads.
LoadVector poisson_loads(int n, double mean, Rng& rng);

struct DominationCheck {
  Estimate multinomial;  // E[f(X)], X multinomial with n balls
  Estimate poisson;      // E[f(Y)], Y independent Poisson(1)
  /// E[f(X)] <= 2 E[f(Y)] + 3 combined standard errors.
  bool holds() const;
};

using LoadStatistic = std::function<double(std::span<const std::int64_t>)>;

DominationCheck compare_poisson(int n, const LoadStatistic& f, int trials, Rng& rng);

}  // namespace fairbias

#endif  // FAIRBIAS_BALLS_BINS_HPP_
