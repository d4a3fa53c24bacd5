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

#ifndef FAIRBIAS_DISTRIBUTION_HPP_
#define FAIRBIAS_DISTRIBUTION_HPP_

#include <numeric>
#include <vector>

#include "common.hpp"
#include "rng.hpp"

namespace fairbias {

/// Request distribution over points given by non-negative integer weights;
/// p_i = weight_i / total exactly.
class RequestDistribution {
 public:
  explicit RequestDistribution(std::vector<std::int64_t> weights) : weights_(std::move(weights)) {
    require(!weights_.empty(), "distribution over zero points");
    for (auto w : weights_) require(w >= 0, "negative distribution weight");
    total_ = std::accumulate(weights_.begin(), weights_.end(), std::int64_t{0});
    require(total_ > 0, "distribution weights sum to zero");
  }

  static RequestDistribution uniform(int n) {
    return RequestDistribution(std::vector<std::int64_t>(static_cast<std::size_t>(n), 1));
  }

  int size() const { return static_cast<int>(weights_.size()); }
  std::int64_t weight(PointId i) const { return weights_[i]; }
  std::int64_t total() const { return total_; }
  const std::vector<std::int64_t>& weights() const { return weights_; }
  Rational probability(PointId i) const { return Rational(weights_[i], total_); }
  bool is_uniform() const {
    for (auto w : weights_)
      if (w != weights_.front()) return false;
    return true;
  }

  PointId sample(Rng& rng) const { return static_cast<PointId>(sample_weighted(rng, weights_)); }

  std::vector<PointId> sample_stream(int length, Rng& rng) const {
    std::vector<PointId> stream(static_cast<std::size_t>(length));
    for (auto& r : stream) r = sample(rng);
    return stream;
  }

 private:
  std::vector<std::int64_t> weights_;
  std::int64_t total_ = 0;
};

}  // namespace fairbias

#endif  // FAIRBIAS_DISTRIBUTION_HPP_
