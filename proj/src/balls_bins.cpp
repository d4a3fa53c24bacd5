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

#include "balls_bins.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "common.hpp"

namespace fairbias {
namespace {

template <typename Draw>
Estimate monte_carlo(int trials, Draw draw) {
  require(trials >= 1, "need at least one trial");
  double sum = 0, sum_sq = 0;
  for (int t = 0; t < trials; ++t) {
    const double v = draw();
    sum += v;
    sum_sq += v * v;
  }
  Estimate e;
  e.mean = sum / trials;
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - sum * e.mean) / (trials - 1));
    e.stderr_ = std::sqrt(var / trials);
  }
  return e;
}

}  // namespace

LoadVector sample_loads(int n, std::int64_t m, Rng& rng) {
  require(n >= 1, "need at least one bin");
  require(m >= 0, "negative ball count");
  LoadVector loads(static_cast<std::size_t>(n), 0);
  for (std::int64_t b = 0; b < m; ++b) ++loads[uniform_below(rng, static_cast<std::uint64_t>(n))];
  return loads;
}

std::int64_t top_k_sum(std::span<const std::int64_t> loads, int k) {
  require(k >= 1 && k <= static_cast<int>(loads.size()), "k must lie in [1, n]");
  std::vector<std::int64_t> sorted(loads.begin(), loads.end());
  std::nth_element(sorted.begin(), sorted.begin() + (k - 1), sorted.end(), std::greater<>());
  std::int64_t sum = 0;
  for (int i = 0; i < k; ++i) sum += sorted[i];
  return sum;
}

Estimate estimate_Nk(int n, int k, int trials, Rng& rng) {
  require(k >= 1 && k <= n, "k must lie in [1, n]");
  return monte_carlo(trials, [&] {
    auto loads = sample_loads(n, n, rng);
    return static_cast<double>(top_k_sum(loads, k));
  });
}

LoadVector poisson_loads(int n, double mean, Rng& rng) {
  require(n >= 1, "need at least one bin");
  require(mean >= 0, "negative Poisson mean");
  LoadVector loads(static_cast<std::size_t>(n));
  for (auto& l : loads) l = poisson_inversion(rng, mean);
  return loads;
}

bool DominationCheck::holds() const {
  const double se = std::sqrt(multinomial.stderr_ * multinomial.stderr_ +
                              4 * poisson.stderr_ * poisson.stderr_);
  return multinomial.mean <= 2 * poisson.mean + 3 * se;
}

DominationCheck compare_poisson(int n, const LoadStatistic& f, int trials, Rng& rng) {
  DominationCheck c;
  c.multinomial = monte_carlo(trials, [&] { return f(sample_loads(n, n, rng)); });
  c.poisson = monte_carlo(trials, [&] { return f(poisson_loads(n, 1.0, rng)); });
  return c;
}

}  // namespace fairbias
