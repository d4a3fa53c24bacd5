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

#ifndef FAIRBIAS_RNG_HPP_
#define FAIRBIAS_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "common.hpp"

namespace fairbias {

/// All randomness flows through one generator type. Episode i of a run with
/// base seed b uses Rng(b + i).
using Rng = std::mt19937_64;

// The helpers below avoid std::*_distribution so that a seed yields the same
// stream on every standard library implementation.

/// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  // Rejection from the largest multiple of bound below 2^64.
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound + 1) % bound;
  std::uint64_t draw = rng();
  while (draw > limit) draw = rng();
  return draw % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Inverse-CDF draw over non-negative integer weights with positive total:
/// one uniform integer u in [0, total), returns the first index whose
/// cumulative weight exceeds u.
inline std::size_t sample_weighted(Rng& rng, std::span<const std::int64_t> weights) {
  std::int64_t total = 0;
  for (auto w : weights) total += w;
  require(total > 0, "sample_weighted: weights must have a positive total");
  auto u = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(total)));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  fail(ErrorCode::kInternal, "sample_weighted: fell off the end");
}

/// Fisher-Yates shuffle driven by uniform_below.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = uniform_below(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

/// Poisson draw by sequential inversion of the pmf. Intended for small means.
inline std::int64_t poisson_inversion(Rng& rng, double mean) {
  if (mean <= 0.0) return 0;
  double u = uniform_unit(rng);
  double p = std::exp(-mean);
  double cdf = p;
  std::int64_t x = 0;
  while (u >= cdf) {
    ++x;
    p *= mean / static_cast<double>(x);
    double next = cdf + p;
    if (next == cdf) break;  // tail underflow
    cdf = next;
  }
  return x;
}

}  // namespace fairbias

#endif  // FAIRBIAS_RNG_HPP_
