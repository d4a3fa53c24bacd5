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

#include "frt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fairbias {

WeightedTree frt_embed(const Metric& metric, Rng& rng) {
  if (!metric.is_metric()) fail(ErrorCode::kNotMetric, "frt_embed needs a metric instance");
  const int n = metric.size();

  std::vector<PointId> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  const double beta = std::exp2(uniform_unit(rng));

  Cost diameter = 0;
  for (Cost d : metric.matrix()) diameter = std::max(diameter, d);
  int top = 0;
  while ((Cost{1} << top) < diameter) ++top;

  std::vector<WeightedTree::Edge> edges;
  int node_count = 1;  // node 0 is the root cluster
  struct Cluster {
    int node;
    std::vector<PointId> members;
  };
  std::vector<Cluster> current{{0, std::vector<PointId>(n)}};
  std::iota(current[0].members.begin(), current[0].members.end(), 0);

  for (int level = top; level >= 0; --level) {
    const double radius = beta * std::ldexp(1.0, level - 1);
    const Cost edge_length = Cost{1} << (level + 1);
    std::vector<Cluster> next;
    for (const Cluster& cluster : current) {
      // Group members by their first center in permutation order.
      std::vector<std::vector<PointId>> groups;
      std::vector<int> group_of_center(n, -1);
      for (PointId v : cluster.members) {
        for (PointId center : order) {
          if (static_cast<double>(metric.dist(v, center)) <= radius) {
            if (group_of_center[center] < 0) {
              group_of_center[center] = static_cast<int>(groups.size());
              groups.emplace_back();
            }
            groups[group_of_center[center]].push_back(v);
            break;
          }
        }
      }
      for (auto& group : groups) {
        int child = node_count++;
        edges.push_back({cluster.node, child, edge_length});
        next.push_back({child, std::move(group)});
      }
    }
    current = std::move(next);
  }

  std::vector<int> point_nodes(n, -1);
  for (const Cluster& cluster : current) {
    if (cluster.members.size() == 1) {
      point_nodes[cluster.members.front()] = cluster.node;
      continue;
    }
    for (PointId p : cluster.members) {
      int leaf = node_count++;
      edges.push_back({cluster.node, leaf, 0});
      point_nodes[p] = leaf;
    }
  }
  return WeightedTree(node_count, std::move(edges), std::move(point_nodes));
}

}  // namespace fairbias
