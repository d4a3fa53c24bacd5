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

#include "offline_opt.hpp"

#include <cstdlib>
#include <string>

#include "transport.hpp"

namespace fairbias {
namespace {

void check_requests(int n, const RequestMultiset& requests) {
  require(static_cast<int>(requests.counts.size()) == n,
          "request multiset covers " + std::to_string(requests.counts.size()) +
              " locations, expected " + std::to_string(n));
  for (int c : requests.counts) require(c >= 0, "negative request count");
  require(requests.total() == n, "request multiset must hold exactly n requests");
}

std::vector<std::int64_t> widen(std::span<const int> counts) {
  return {counts.begin(), counts.end()};
}

}  // namespace

RequestMultiset RequestMultiset::from_stream(int n, std::span<const PointId> stream) {
  RequestMultiset m;
  m.counts.assign(static_cast<std::size_t>(n), 0);
  for (PointId r : stream) {
    require(r >= 0 && r < n, "request location out of range");
    ++m.counts[r];
  }
  return m;
}

int RequestMultiset::total() const {
  int sum = 0;
  for (int c : counts) sum += c;
  return sum;
}

Cost opt_general(const Metric& metric, const RequestMultiset& requests) {
  const int n = metric.size();
  check_requests(n, requests);
  std::vector<std::int64_t> servers(static_cast<std::size_t>(n), 1);
  auto demand = widen(requests.counts);
  CostFn cost = [&metric](int s, int r) { return metric.dist(s, r); };
  for (Cost c : metric.matrix()) require(c >= 0, "costs must be non-negative");
  return total_cost(solve_transport_ssp(servers, demand, cost), cost);
}

Cost opt_tree(const WeightedTree& tree, const RequestMultiset& requests) {
  check_requests(tree.point_count(), requests);
  std::vector<std::int64_t> imbalance(static_cast<std::size_t>(tree.node_count()), 0);
  for (PointId p = 0; p < tree.point_count(); ++p)
    imbalance[tree.point_node(p)] += requests.counts[p] - 1;
  Cost total = 0;
  const auto& order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int node = *it;
    int e = tree.parent_edge(node);
    if (e < 0) continue;
    total += tree.edges()[e].length * std::abs(imbalance[node]);
    imbalance[tree.parent(node)] += imbalance[node];
  }
  return total;
}

Cost opt_cost(const Metric& metric, const RequestMultiset& requests) {
  if (const WeightedTree* tree = metric.tree()) return opt_tree(*tree, requests);
  return opt_general(metric, requests);
}

Cost opt_max_weight(const WeightMatrix& weights, const RequestMultiset& requests) {
  const int n = weights.size();
  check_requests(n, requests);
  std::vector<std::int64_t> servers(static_cast<std::size_t>(n), 1);
  auto demand = widen(requests.counts);
  const Cost shift = weights.max_weight();
  CostFn cost = [&weights, shift](int s, int r) { return shift - weights.at(s, r); };
  return shift * n - total_cost(solve_transport_ssp(servers, demand, cost), cost);
}

}  // namespace fairbias
