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

#include "metric.hpp"

#include <cstdlib>
#include <string>

namespace fairbias {

WeightedTree::WeightedTree(int node_count, std::vector<Edge> edges,
                           std::vector<int> point_nodes)
    : node_count_(node_count), edges_(std::move(edges)), point_nodes_(std::move(point_nodes)) {
  require(node_count_ >= 1, "tree needs at least one node");
  require(static_cast<int>(edges_.size()) == node_count_ - 1,
          "tree with " + std::to_string(node_count_) + " nodes needs " +
              std::to_string(node_count_ - 1) + " edges");
  require(!point_nodes_.empty(), "tree must carry at least one point");

  adjacency_.assign(node_count_, {});
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const Edge& edge = edges_[e];
    require(edge.u >= 0 && edge.u < node_count_ && edge.v >= 0 && edge.v < node_count_,
            "edge endpoint out of range");
    require(edge.u != edge.v, "self-loop in tree");
    require(edge.length >= 0, "negative edge length");
    adjacency_[edge.u].emplace_back(edge.v, e);
    adjacency_[edge.v].emplace_back(edge.u, e);
  }

  node_point_.assign(node_count_, -1);
  for (PointId p = 0; p < static_cast<PointId>(point_nodes_.size()); ++p) {
    int node = point_nodes_[p];
    require(node >= 0 && node < node_count_, "point mapped to a missing node");
    require(node_point_[node] < 0, "two points mapped to the same node");
    node_point_[node] = p;
  }

  parent_.assign(node_count_, -1);
  parent_edge_.assign(node_count_, -1);
  depth_.assign(node_count_, 0);
  root_distance_.assign(node_count_, 0);
  std::vector<bool> seen(node_count_, false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    int node = stack.back();
    stack.pop_back();
    preorder_.push_back(node);
    // Reverse so that children are visited in adjacency order.
    for (auto it = adjacency_[node].rbegin(); it != adjacency_[node].rend(); ++it) {
      auto [next, e] = *it;
      if (seen[next]) continue;
      seen[next] = true;
      parent_[next] = node;
      parent_edge_[next] = e;
      depth_[next] = depth_[node] + 1;
      root_distance_[next] = root_distance_[node] + edges_[e].length;
      stack.push_back(next);
    }
  }
  require(static_cast<int>(preorder_.size()) == node_count_, "tree is not connected");
}

int WeightedTree::point_node(PointId p) const {
  require(p >= 0 && p < point_count(), "point " + std::to_string(p) + " is not mapped");
  return point_nodes_[p];
}

std::optional<PointId> WeightedTree::point_at(int node) const {
  if (node_point_[node] < 0) return std::nullopt;
  return node_point_[node];
}

Cost WeightedTree::node_distance(int a, int b) const {
  Cost total = root_distance_[a] + root_distance_[b];
  while (depth_[a] > depth_[b]) a = parent_[a];
  while (depth_[b] > depth_[a]) b = parent_[b];
  while (a != b) {
    a = parent_[a];
    b = parent_[b];
  }
  return total - 2 * root_distance_[a];
}

Cost tree_distance(const WeightedTree& tree, PointId u, PointId v) {
  return tree.node_distance(tree.point_node(u), tree.point_node(v));
}

Metric Metric::from_matrix(int n, std::vector<Cost> dist, Cost scale) {
  require(n >= 1, "metric needs at least one point");
  require(dist.size() == static_cast<std::size_t>(n) * n, "distance matrix must be n x n");
  auto report = validate_metric(n, dist);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    fail(ErrorCode::kNotMetric, "matrix is not a metric (" +
                                    std::to_string(report.violations.size()) +
                                    " violations, first at " + std::to_string(v.i) + "," +
                                    std::to_string(v.j) + "," + std::to_string(v.k) + ")");
  }
  Metric m;
  m.n_ = n;
  m.dist_ = std::move(dist);
  m.scale_ = scale;
  return m;
}

Metric Metric::unchecked(int n, std::vector<Cost> cost, Cost scale) {
  require(n >= 1, "instance needs at least one point");
  require(cost.size() == static_cast<std::size_t>(n) * n, "cost matrix must be n x n");
  Metric m;
  m.n_ = n;
  m.dist_ = std::move(cost);
  m.scale_ = scale;
  m.is_metric_ = validate_metric(n, m.dist_).ok();
  return m;
}

Metric Metric::from_tree(std::shared_ptr<const WeightedTree> tree, Cost scale) {
  require(tree != nullptr, "null tree");
  Metric m;
  m.n_ = tree->point_count();
  m.dist_.resize(static_cast<std::size_t>(m.n_) * m.n_);
  for (PointId i = 0; i < m.n_; ++i) {
    for (PointId j = i; j < m.n_; ++j) {
      Cost d = tree_distance(*tree, i, j);
      m.dist_[static_cast<std::size_t>(i) * m.n_ + j] = d;
      m.dist_[static_cast<std::size_t>(j) * m.n_ + i] = d;
    }
  }
  m.kind_ = MetricKind::kTree;
  m.scale_ = scale;
  m.tree_ = std::move(tree);
  return m;
}

Metric build_line_metric(int n, Cost spacing) {
  require(n >= 1, "line needs at least one point");
  require(spacing >= 0, "spacing must be non-negative");
  Metric m;
  m.n_ = n;
  m.kind_ = MetricKind::kLine;
  std::vector<WeightedTree::Edge> path;
  std::vector<int> nodes(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = i;
    if (i + 1 < n) path.push_back({i, i + 1, spacing});
  }
  m.tree_ = std::make_shared<const WeightedTree>(n, std::move(path), std::move(nodes));
  m.dist_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.dist_[static_cast<std::size_t>(i) * n + j] = spacing * std::abs(i - j);
  return m;
}

ValidationReport validate_metric(int n, std::span<const Cost> dist) {
  ValidationReport report;
  auto d = [&](int i, int j) { return dist[static_cast<std::size_t>(i) * n + j]; };
  using Kind = MetricViolation::Kind;
  for (int i = 0; i < n; ++i) {
    if (d(i, i) != 0) report.violations.push_back({Kind::kDiagonal, i, i, i});
    for (int j = 0; j < n; ++j) {
      if (d(i, j) < 0) report.violations.push_back({Kind::kNegative, i, j, j});
      if (i < j && d(i, j) != d(j, i)) report.violations.push_back({Kind::kSymmetry, i, j, j});
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (d(i, k) > d(i, j) + d(j, k)) report.violations.push_back({Kind::kTriangle, i, j, k});
  return report;
}

ValidationReport validate_metric(const Metric& metric) {
  return validate_metric(metric.size(), metric.matrix());
}

std::vector<EdgeCut> edge_cuts(const WeightedTree& tree) {
  const int n = tree.point_count();
  // Points below each node, in the rooted orientation.
  std::vector<int> below(tree.node_count(), 0);
  const auto& order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int node = *it;
    if (tree.point_at(node)) ++below[node];
    if (tree.parent(node) >= 0) below[tree.parent(node)] += below[node];
  }

  std::vector<EdgeCut> cuts(tree.edges().size());
  for (int node : order) {
    int e = tree.parent_edge(node);
    if (e < 0) continue;
    EdgeCut& cut = cuts[e];
    cut.edge = e;
    bool child_is_small = 2 * below[node] <= n;
    cut.small_count = child_is_small ? below[node] : n - below[node];
    cut.small_side = PointSet(n);
    // Membership of every point in the child's subtree.
    for (PointId p = 0; p < n; ++p) {
      int x = tree.point_node(p);
      bool in_child = false;
      while (x >= 0) {
        if (x == node) {
          in_child = true;
          break;
        }
        x = tree.parent(x);
      }
      cut.small_side[p] = (in_child == child_is_small);
    }
  }
  return cuts;
}

}  // namespace fairbias
