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

// Integral transportation problems: rows supply integer units, columns demand
// integer units, totals agree, and every unit shipped from row i to column j
// costs cost(i, j). Fractional b-matchings reduce to these after scaling all
// demands by a common denominator.

#ifndef FAIRBIAS_TRANSPORT_HPP_
#define FAIRBIAS_TRANSPORT_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "common.hpp"
#include "metric.hpp"

namespace fairbias {

struct Flow {
  int row = 0;
  int col = 0;
  std::int64_t units = 0;
};

using CostFn = std::function<Cost(int row, int col)>;

/// Successive shortest paths with Johnson potentials on the complete
/// bipartite graph. Costs must be non-negative. Rows and columns with zero
/// supply/demand are skipped. Output is sorted by (row, col) and depends only
/// on the input ordering.
std::vector<Flow> solve_transport_ssp(std::span<const std::int64_t> supply,
                                      std::span<const std::int64_t> demand, const CostFn& cost);

/// Exact transport between point masses on a tree: rows and columns are both
/// point ids. Mass is paired at the lowest common node first, so co-located
/// supply and demand always match each other maximally. Cost is tree distance.
std::vector<Flow> solve_tree_transport(const WeightedTree& tree,
                                       std::span<const std::int64_t> supply,
                                       std::span<const std::int64_t> demand);

/// Pushes flow around cycles of the support graph until it is a forest. Each
/// cycle is shifted in the direction that does not raise cost, so optimal
/// inputs stay optimal and the result is a vertex of the polytope.
void make_support_acyclic(std::vector<Flow>& flows, const CostFn& cost);

Cost total_cost(std::span<const Flow> flows, const CostFn& cost);

}  // namespace fairbias

#endif  // FAIRBIAS_TRANSPORT_HPP_
