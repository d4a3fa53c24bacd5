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

#include "hier_tree.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace fairbias {

WeightedTree ternarize(const WeightedTree& tree) {
  // Pendant leaves for points on nodes of degree >= 2.
  int nodes = tree.node_count();
  std::vector<WeightedTree::Edge> edges = tree.edges();
  std::vector<int> point_nodes = tree.point_nodes();
  for (PointId p = 0; p < tree.point_count(); ++p) {
    if (tree.degree(point_nodes[p]) < 2) continue;
    edges.push_back({point_nodes[p], nodes, 0});
    point_nodes[p] = nodes++;
  }
  WeightedTree pendant(nodes, std::move(edges), std::move(point_nodes));

  // Unfold every node of degree d > 3: it keeps its first two neighbours and
  // hands the rest to a chain of d - 3 new nodes.
  edges = pendant.edges();
  for (int v = 0; v < pendant.node_count(); ++v) {
    const auto& adj = pendant.neighbors(v);
    const int d = static_cast<int>(adj.size());
    if (d <= 3) continue;
    const int first = nodes;
    nodes += d - 3;
    edges.push_back({v, first, 0});
    for (int c = first; c + 1 < nodes; ++c) edges.push_back({c, c + 1, 0});
    for (int t = 2; t < d; ++t) {
      const int holder = first + std::min(t - 2, d - 4);
      WeightedTree::Edge& e = edges[adj[t].second];
      (e.u == v ? e.u : e.v) = holder;
    }
  }
  return WeightedTree(nodes, std::move(edges), pendant.point_nodes());
}

HierarchicalDecomposition::HierarchicalDecomposition(std::shared_ptr<const WeightedTree> tree)
    : tree_(std::move(tree)) {
  require(tree_ != nullptr, "null tree");
  const WeightedTree& t = *tree_;
  for (int v = 0; v < t.node_count(); ++v)
    require(t.degree(v) <= 3, "split needs a tree of maximum degree 3");
  edge_levels_.assign(t.edges().size(), 0);

  Region root;
  root.nodes = t.preorder();
  for (int v : root.nodes)
    if (auto p = t.point_at(v)) root.points.push_back(*p);
  std::sort(root.points.begin(), root.points.end());
  regions_.push_back(std::move(root));

  std::vector<int> member(t.node_count(), -1);
  std::vector<int> below(t.node_count(), 0);
  std::vector<int> via(t.node_count(), -1);
  for (std::size_t id = 0; id < regions_.size(); ++id) {
    // Root the region at its first node and count points below every node.
    const int rid = static_cast<int>(id);
    for (int v : regions_[id].nodes) member[v] = rid;
    std::vector<int> order{regions_[id].nodes.front()};
    via[order.front()] = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (auto [next, e] : t.neighbors(order[i])) {
        if (member[next] != rid || edge_levels_[e] != 0 || e == via[order[i]]) continue;
        via[next] = e;
        order.push_back(next);
      }
    }
    if (order.size() == 1) continue;

    const int total = static_cast<int>(regions_[id].points.size());
    int best_node = -1;
    int best_edge = std::numeric_limits<int>::max();
    int best_larger = std::numeric_limits<int>::max();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      below[*it] = t.point_at(*it) ? 1 : 0;
      for (auto [next, e] : t.neighbors(*it))
        if (member[next] == rid && edge_levels_[e] == 0 && e != via[*it]) below[*it] += below[next];
    }
    for (std::size_t i = 1; i < order.size(); ++i) {
      const int v = order[i];
      const int larger = std::max(below[v], total - below[v]);
      if (larger < best_larger || (larger == best_larger && via[v] < best_edge)) {
        best_larger = larger;
        best_edge = via[v];
        best_node = v;
      }
    }

    const int level = regions_[id].level + 1;
    edge_levels_[best_edge] = level;
    depth_ = std::max(depth_, level);
    regions_[id].split_edge = best_edge;

    // The side hanging below best_node versus everything else.
    std::vector<bool> lower(t.node_count(), false);
    lower[best_node] = true;
    for (std::size_t i = 1; i < order.size(); ++i) {
      const int v = order[i];
      if (v == best_node) continue;
      const auto& e = t.edges()[via[v]];
      const int up = e.u == v ? e.v : e.u;
      lower[v] = lower[up];
    }
    Region sides[2];
    for (int v : order) {
      Region& side = sides[lower[v] ? 1 : 0];
      side.nodes.push_back(v);
      if (auto p = t.point_at(v)) side.points.push_back(*p);
    }
    for (int s = 0; s < 2; ++s) {
      sides[s].level = level;
      sides[s].parent = rid;
      std::sort(sides[s].points.begin(), sides[s].points.end());
      regions_[id].children[s] = static_cast<int>(regions_.size());
      regions_.push_back(std::move(sides[s]));
    }
  }

  chains_.assign(t.point_count(), {});
  for (PointId p = 0; p < t.point_count(); ++p) {
    int r = 0;
    chains_[p].push_back(0);
    while (regions_[r].split_edge >= 0) {
      const auto& kids = regions_[r].children;
      const auto& pts = regions_[kids[0]].points;
      r = std::binary_search(pts.begin(), pts.end(), p) ? kids[0] : kids[1];
      chains_[p].push_back(r);
    }
  }
}

bool HierarchicalDecomposition::balanced() const {
  for (const Region& r : regions_) {
    if (r.split_edge < 0 || r.points.size() < 2) continue;
    for (int child : r.children)
      if (3 * regions_[child].points.size() > 2 * r.points.size()) return false;
  }
  return true;
}

HierarchicalDecomposition split(std::shared_ptr<const WeightedTree> tree) {
  return HierarchicalDecomposition(std::move(tree));
}

OccupancyState::OccupancyState(const HierarchicalDecomposition& decomposition)
    : decomposition_(&decomposition),
      vacant_(static_cast<std::size_t>(decomposition.tree().point_count()), true) {
  vacancies_.reserve(decomposition.regions().size());
  for (const Region& r : decomposition.regions())
    vacancies_.push_back(static_cast<int>(r.points.size()));
}

void OccupancyState::occupy(PointId p) {
  require(p >= 0 && p < static_cast<PointId>(vacant_.size()), "point out of range");
  require(vacant_[p], "point is already occupied");
  vacant_[p] = false;
  for (int r : decomposition_->chain(p)) --vacancies_[r];
}

bool OccupancyState::consistent() const {
  const auto& regions = decomposition_->regions();
  for (std::size_t r = 0; r < regions.size(); ++r) {
    int count = 0;
    for (PointId p : regions[r].points) count += vacant_[p] ? 1 : 0;
    if (count != vacancies_[r]) return false;
  }
  return true;
}

PointId hmatch(const OccupancyState& state, const HierarchicalDecomposition& decomposition,
               PointId u, Rng& rng) {
  require(state.total_vacancies() > 0, "no vacant point left");
  require(u >= 0 && u < decomposition.tree().point_count(), "request point out of range");
  const auto& regions = decomposition.regions();
  for (int jumps = 0; jumps <= decomposition.depth() + 1; ++jumps) {
    if (state.vacant(u)) return u;
    const auto& chain = decomposition.chain(u);
    std::size_t i = 1;
    while (state.vacancies(chain[i]) > 0) ++i;  // chain ends at u's full singleton region
    const Region& parent = regions[regions[chain[i]].parent];
    const int sibling = parent.children[0] == chain[i] ? parent.children[1] : parent.children[0];
    const auto& pts = regions[sibling].points;
    u = pts[uniform_below(rng, pts.size())];
  }
  fail(ErrorCode::kInternal, "hmatch did not terminate within the decomposition depth");
}

SplitMatchMatcher::SplitMatchMatcher(const WeightedTree& tree)
    : decomposition_(std::make_shared<const WeightedTree>(ternarize(tree))),
      state_(decomposition_),
      free_(static_cast<std::size_t>(tree.point_count())) {
  free_.set();
}

void SplitMatchMatcher::reset() {
  state_ = OccupancyState(decomposition_);
  free_.set();
}

PointId SplitMatchMatcher::match(PointId request, Rng& rng) {
  const PointId s = hmatch(state_, decomposition_, request, rng);
  state_.occupy(s);
  free_.reset(s);
  return s;
}

MatchingResult run_episode_hier(const WeightedTree& tree, std::span<const PointId> stream,
                                Rng& rng) {
  require(static_cast<int>(stream.size()) == tree.point_count(), "stream length must equal n");
  SplitMatchMatcher matcher(tree);
  MatchingResult result;
  result.algorithm = "split-match";
  for (PointId r : stream) {
    const PointId s = matcher.match(r, rng);
    const Cost cost = tree_distance(tree, s, r);
    result.assignments.push_back({r, s, cost});
    result.step_costs.push_back(cost);
    result.total_cost += cost;
  }
  return result;
}

}  // namespace fairbias
