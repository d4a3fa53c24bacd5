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

// Exact offline optima for a realized request multiset: every request is
// matched to a distinct server.

#ifndef FAIRBIAS_OFFLINE_OPT_HPP_
#define FAIRBIAS_OFFLINE_OPT_HPP_

#include <span>
#include <vector>

#include "b_matching.hpp"
#include "metric.hpp"

namespace fairbias {

/// Request counts per location. Total must equal the number of servers.
struct RequestMultiset {
  std::vector<int> counts;

  static RequestMultiset from_stream(int n, std::span<const PointId> stream);
  int total() const;
};

/// Min-cost perfect matching on any cost matrix (non-negative costs).
Cost opt_general(const Metric& metric, const RequestMultiset& requests);

/// Closed form on trees: sum over edges of length * |X_e - n_e|, with X_e and
/// n_e the requests and servers on one side of e.
Cost opt_tree(const WeightedTree& tree, const RequestMultiset& requests);

/// opt_tree for tree- and line-backed metrics, opt_general otherwise.
Cost opt_cost(const Metric& metric, const RequestMultiset& requests);

Cost opt_max_weight(const WeightMatrix& weights, const RequestMultiset& requests);

}  // namespace fairbias

#endif  // FAIRBIAS_OFFLINE_OPT_HPP_
