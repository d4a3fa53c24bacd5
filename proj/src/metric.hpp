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

// Metric spaces that servers and requests live in. Distances are integer cost
// units; a MetricInstance is immutable once built and may be shared freely
// between concurrently running episodes.

#ifndef FAIRBIAS_METRIC_HPP_
#define FAIRBIAS_METRIC_HPP_

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "common.hpp"

namespace fairbias {

/// Edge-weighted tree whose nodes may carry points. Every point sits on
/// exactly one node and no node carries two points. Internal bookkeeping is
/// rooted at node 0.
class WeightedTree {
 public:
  struct Edge {
    int u = 0;
    int v = 0;
    Cost length = 0;
  };

  /// Throws kInvalidArgument unless the edges form a spanning tree with
  /// non-negative lengths and point_nodes are distinct valid nodes.
  WeightedTree(int node_count, std::vector<Edge> edges, std::vector<int> point_nodes);

  int node_count() const { return node_count_; }
  int point_count() const { return static_cast<int>(point_nodes_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  int point_node(PointId p) const;
  /// Point carried by a node, if any.
  std::optional<PointId> point_at(int node) const;
  const std::vector<int>& point_nodes() const { return point_nodes_; }

  /// (neighbor, edge id) pairs.
  const std::vector<std::pair<int, int>>& neighbors(int node) const { return adjacency_[node]; }
  int degree(int node) const { return static_cast<int>(adjacency_[node].size()); }

  int parent(int node) const { return parent_[node]; }
  /// Edge joining node to its parent; -1 at the root.
  int parent_edge(int node) const { return parent_edge_[node]; }
  /// Nodes in preorder from the root; parents precede children.
  const std::vector<int>& preorder() const { return preorder_; }

  Cost node_distance(int a, int b) const;

 private:
  int node_count_;
  std::vector<Edge> edges_;
  std::vector<int> point_nodes_;
  std::vector<int> node_point_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
  std::vector<int> parent_;
  std::vector<int> parent_edge_;
  std::vector<int> depth_;
  std::vector<Cost> root_distance_;
  std::vector<int> preorder_;
};

/// Sum of edge lengths on the unique path between two points.
Cost tree_distance(const WeightedTree& tree, PointId u, PointId v);

enum class MetricKind { kMatrix, kTree, kLine };

/// A point set with integer costs. dist(s, r) is the cost of serving a request
/// at location r from the server at s. For genuine metrics this is symmetric;
/// instances built through unchecked() may violate any metric axiom and are
/// flagged so that metric-assuming operations can refuse them.
class Metric {
 public:
  /// Validates the matrix; throws kNotMetric on any violation.
  static Metric from_matrix(int n, std::vector<Cost> dist, Cost scale = 1);
  /// Cost matrix (row = server, column = request location) with no checks.
  static Metric unchecked(int n, std::vector<Cost> cost, Cost scale = 1);
  static Metric from_tree(std::shared_ptr<const WeightedTree> tree, Cost scale = 1);

  int size() const { return n_; }
  Cost dist(PointId server, PointId location) const {
    return dist_[static_cast<std::size_t>(server) * n_ + location];
  }
  std::span<const Cost> matrix() const { return dist_; }
  MetricKind kind() const { return kind_; }
  bool is_metric() const { return is_metric_; }
  /// Fixed-point scale: real distance = dist / scale. Informational only.
  Cost scale() const { return scale_; }
  /// Backing tree for tree- and line-backed instances, nullptr otherwise.
  const WeightedTree* tree() const { return tree_.get(); }
  std::shared_ptr<const WeightedTree> shared_tree() const { return tree_; }

 private:
  friend Metric build_line_metric(int n, Cost spacing);
  Metric() = default;

  int n_ = 0;
  std::vector<Cost> dist_;
  MetricKind kind_ = MetricKind::kMatrix;
  bool is_metric_ = true;
  Cost scale_ = 1;
  std::shared_ptr<const WeightedTree> tree_;
};

/// dist(i, j) = spacing * |i - j|.
Metric build_line_metric(int n, Cost spacing);

struct MetricViolation {
  enum class Kind { kNegative, kDiagonal, kSymmetry, kTriangle };
  Kind kind;
  int i = 0;
  int j = 0;
  int k = 0;  // only meaningful for kTriangle: dist(i,k) > dist(i,j) + dist(j,k)
};

struct ValidationReport {
  std::vector<MetricViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Exhaustive check of every axiom; lists every violated triple.
ValidationReport validate_metric(int n, std::span<const Cost> dist);
ValidationReport validate_metric(const Metric& metric);

/// The cut made by deleting one tree edge, seen from its side with fewer
/// points (ties: the side away from the root).
struct EdgeCut {
  int edge = 0;
  int small_count = 0;   // points on the smaller side, at most n/2
  PointSet small_side;   // membership of each point in the smaller side
};

std::vector<EdgeCut> edge_cuts(const WeightedTree& tree);

}  // namespace fairbias

#endif  // FAIRBIAS_METRIC_HPP_
