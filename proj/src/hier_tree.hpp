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

// Split/Match: an alternative online algorithm for tree metrics.
//
// Split recursively cuts the tree at a balanced edge and marks that edge with
// its recursion depth, giving a laminar family of regions. Match sends a
// request at u to u itself when u is vacant; otherwise it finds the
// shallowest full region containing u, jumps to a uniformly random point of
// the sibling region and repeats from there.

#ifndef FAIRBIAS_HIER_TREE_HPP_
#define FAIRBIAS_HIER_TREE_HPP_

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "fair_bias.hpp"
#include "metric.hpp"
#include "rng.hpp"

namespace fairbias {

/// Max degree 3, with every point on a leaf. Points sitting on inner nodes
/// get a zero-length pendant leaf, then high-degree nodes are unfolded into
/// chains of zero-length edges. Point ids and all point distances are kept.
WeightedTree ternarize(const WeightedTree& tree);

struct Region {
  int level = 0;           // 0 for the whole tree
  int parent = -1;
  int split_edge = -1;     // -1 when the region has no edges left
  int children[2] = {-1, -1};
  std::vector<int> nodes;
  std::vector<PointId> points;
};

class HierarchicalDecomposition {
 public:
  explicit HierarchicalDecomposition(std::shared_ptr<const WeightedTree> tree);

  const WeightedTree& tree() const { return *tree_; }
  const std::vector<Region>& regions() const { return regions_; }
  /// Level mark of every edge, >= 1.
  const std::vector<int>& edge_levels() const { return edge_levels_; }
  /// Regions containing p, from the whole tree down to p's own node.
  const std::vector<int>& chain(PointId p) const { return chains_[p]; }
  int depth() const { return depth_; }

  /// Every split of a region with at least two points leaves at most 2/3 of
  /// its points on each side. Regions with fewer points have nothing to
  /// balance.
  bool balanced() const;

 private:
  std::shared_ptr<const WeightedTree> tree_;
  std::vector<Region> regions_;
  std::vector<int> edge_levels_;
  std::vector<std::vector<int>> chains_;
  int depth_ = 0;
};

/// Balanced decomposition of an already ternarized tree.
HierarchicalDecomposition split(std::shared_ptr<const WeightedTree> tree);

class OccupancyState {
 public:
  explicit OccupancyState(const HierarchicalDecomposition& decomposition);

  bool vacant(PointId p) const { return vacant_[p]; }
  int vacancies(int region) const { return vacancies_[region]; }
  int total_vacancies() const { return vacancies_[0]; }
  void occupy(PointId p);
  /// Counters agree with the flags.
  bool consistent() const;

 private:
  const HierarchicalDecomposition* decomposition_;
  std::vector<bool> vacant_;
  std::vector<int> vacancies_;
};

/// Returns a vacant point without occupying it. Throws kInvalidArgument when
/// nothing is vacant and kInternal if the jump count exceeds the depth of the
/// decomposition.
PointId hmatch(const OccupancyState& state, const HierarchicalDecomposition& decomposition,
               PointId u, Rng& rng);

MatchingResult run_episode_hier(const WeightedTree& tree, std::span<const PointId> stream,
                                Rng& rng);

class SplitMatchMatcher final : public OnlineMatcher {
 public:
  explicit SplitMatchMatcher(const WeightedTree& tree);
  SplitMatchMatcher(const SplitMatchMatcher&) = delete;
  SplitMatchMatcher& operator=(const SplitMatchMatcher&) = delete;
  void reset() override;
  PointId match(PointId request, Rng& rng) override;
  const PointSet& free_servers() const override { return free_; }
  std::string_view tag() const override { return "split-match"; }
  const HierarchicalDecomposition& decomposition() const { return decomposition_; }

 private:
  HierarchicalDecomposition decomposition_;
  OccupancyState state_;
  PointSet free_;
};

}  // namespace fairbias

#endif  // FAIRBIAS_HIER_TREE_HPP_
