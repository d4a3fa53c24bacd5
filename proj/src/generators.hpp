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

// Instance generators used by scenarios, verifiers and tests.

#ifndef FAIRBIAS_GENERATORS_HPP_
#define FAIRBIAS_GENERATORS_HPP_

#include <memory>
#include <vector>

#include "b_matching.hpp"
#include "distribution.hpp"
#include "metric.hpp"
#include "rng.hpp"

namespace fairbias {

/// Random recursive tree on n hub nodes (hub i attaches to a uniform earlier
/// hub) with lengths uniform in [1, max_length]. Point i sits on a
/// zero-length pendant leaf of hub i, so points are exactly the leaves.
std::shared_ptr<const WeightedTree> random_tree(int n, Rng& rng, Cost max_length = 100);

/// Centre node 0 with one leaf per point.
std::shared_ptr<const WeightedTree> star_tree(int n, Cost length = 1);

/// All distinct points at distance one.
Metric uniform_metric(int n);

/// n points on a side x side grid with L1 distances.
Metric random_grid_metric(int n, int side, Rng& rng);

/// Integer weights in [0, max_weight].
WeightMatrix random_weights(int n, Cost max_weight, Rng& rng);

/// Weight of point i proportional to 2^(n-1-i).
RequestDistribution geometric_distribution(int n);

/// n even, n >= 4. The first n - 2 request types cost 1 from every server;
/// type n - 2 costs 1 from the first half of the servers and 2^(n/2) from
/// the second half, type n - 1 the reverse. Flagged non-metric.
Metric nonmetric_instance(int n);

}  // namespace fairbias

#endif  // FAIRBIAS_GENERATORS_HPP_
