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

#include "transport.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <utility>

namespace fairbias {
namespace {

constexpr Cost kInfinity = std::numeric_limits<Cost>::max() / 4;

struct Arc {
  int to;
  int rev;
  std::int64_t cap;
  Cost cost;
};

class ResidualGraph {
 public:
  explicit ResidualGraph(int nodes) : adj_(nodes) {}

  void add_arc(int from, int to, std::int64_t cap, Cost cost) {
    adj_[from].push_back({to, static_cast<int>(adj_[to].size()), cap, cost});
    adj_[to].push_back({from, static_cast<int>(adj_[from].size()) - 1, 0, -cost});
  }

  int size() const { return static_cast<int>(adj_.size()); }
  std::vector<Arc>& arcs(int node) { return adj_[node]; }

 private:
  std::vector<std::vector<Arc>> adj_;
};

void sort_flows(std::vector<Flow>& flows) {
  std::sort(flows.begin(), flows.end(), [](const Flow& a, const Flow& b) {
    return std::pair(a.row, a.col) < std::pair(b.row, b.col);
  });
}

void check_balanced(std::span<const std::int64_t> supply, std::span<const std::int64_t> demand) {
  std::int64_t s = 0, d = 0;
  for (auto v : supply) {
    require(v >= 0, "negative supply");
    s += v;
  }
  for (auto v : demand) {
    require(v >= 0, "negative demand");
    d += v;
  }
  require(s == d, "supply and demand totals differ");
}

}  // namespace

std::vector<Flow> solve_transport_ssp(std::span<const std::int64_t> supply,
                                      std::span<const std::int64_t> demand, const CostFn& cost) {
  check_balanced(supply, demand);
  std::vector<int> rows, cols;
  for (int i = 0; i < static_cast<int>(supply.size()); ++i)
    if (supply[i] > 0) rows.push_back(i);
  for (int j = 0; j < static_cast<int>(demand.size()); ++j)
    if (demand[j] > 0) cols.push_back(j);
  const std::int64_t total = std::accumulate(supply.begin(), supply.end(), std::int64_t{0});
  if (total == 0) return {};

  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(cols.size());
  const int source = 0;
  const int sink = r + c + 1;
  ResidualGraph graph(r + c + 2);
  for (int a = 0; a < r; ++a) graph.add_arc(source, 1 + a, supply[rows[a]], 0);
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < c; ++b) {
      Cost w = cost(rows[a], cols[b]);
      require(w >= 0, "transport costs must be non-negative");
      graph.add_arc(1 + a, 1 + r + b, total, w);
    }
  }
  for (int b = 0; b < c; ++b) graph.add_arc(1 + r + b, sink, demand[cols[b]], 0);

  const int nodes = graph.size();
  std::vector<Cost> potential(nodes, 0);
  std::vector<Cost> dist(nodes);
  std::vector<std::pair<int, int>> prev(nodes);  // (node, arc index)
  std::int64_t shipped = 0;
  using Item = std::pair<Cost, int>;
  while (shipped < total) {
    std::fill(dist.begin(), dist.end(), kInfinity);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0;
    heap.emplace(0, source);
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d != dist[u]) continue;
      auto& arcs = graph.arcs(u);
      for (int k = 0; k < static_cast<int>(arcs.size()); ++k) {
        const Arc& arc = arcs[k];
        if (arc.cap == 0) continue;
        Cost nd = d + arc.cost + potential[u] - potential[arc.to];
        if (nd < dist[arc.to]) {
          dist[arc.to] = nd;
          prev[arc.to] = {u, k};
          heap.emplace(nd, arc.to);
        }
      }
    }
    if (dist[sink] >= kInfinity) fail(ErrorCode::kInternal, "transport: sink unreachable");
    for (int v = 0; v < nodes; ++v)
      if (dist[v] < kInfinity) potential[v] += dist[v];

    std::int64_t push = total - shipped;
    for (int v = sink; v != source; v = prev[v].first) {
      const Arc& arc = graph.arcs(prev[v].first)[prev[v].second];
      push = std::min(push, arc.cap);
    }
    for (int v = sink; v != source; v = prev[v].first) {
      Arc& arc = graph.arcs(prev[v].first)[prev[v].second];
      arc.cap -= push;
      graph.arcs(arc.to)[arc.rev].cap += push;
    }
    shipped += push;
  }

  std::vector<Flow> flows;
  for (int a = 0; a < r; ++a) {
    for (const Arc& arc : graph.arcs(1 + a)) {
      if (arc.to <= r || arc.to == sink || arc.cost < 0) continue;
      std::int64_t units = graph.arcs(arc.to)[arc.rev].cap;
      if (units > 0) flows.push_back({rows[a], cols[arc.to - 1 - r], units});
    }
  }
  sort_flows(flows);
  return flows;
}

std::vector<Flow> solve_tree_transport(const WeightedTree& tree,
                                       std::span<const std::int64_t> supply,
                                       std::span<const std::int64_t> demand) {
  const int n = tree.point_count();
  require(static_cast<int>(supply.size()) == n && static_cast<int>(demand.size()) == n,
          "tree transport: one supply and demand entry per point");
  check_balanced(supply, demand);

  struct Mass {
    PointId point;
    std::int64_t units;
  };
  struct Pending {
    std::vector<Mass> supply;
    std::vector<Mass> demand;
  };
  std::vector<Pending> pending(tree.node_count());
  std::vector<Flow> flows;

  const auto& order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int node = *it;
    Pending here;
    if (auto p = tree.point_at(node)) {
      std::int64_t s = supply[*p], d = demand[*p];
      std::int64_t self = std::min(s, d);
      if (self > 0) flows.push_back({*p, *p, self});
      if (s > self) here.supply.push_back({*p, s - self});
      if (d > self) here.demand.push_back({*p, d - self});
    }
    for (auto [child, e] : tree.neighbors(node)) {
      if (child == tree.parent(node)) continue;
      Pending& below = pending[child];
      here.supply.insert(here.supply.end(), below.supply.begin(), below.supply.end());
      here.demand.insert(here.demand.end(), below.demand.begin(), below.demand.end());
      below = {};
    }
    std::size_t a = 0, b = 0;
    while (a < here.supply.size() && b < here.demand.size()) {
      std::int64_t moved = std::min(here.supply[a].units, here.demand[b].units);
      flows.push_back({here.supply[a].point, here.demand[b].point, moved});
      here.supply[a].units -= moved;
      here.demand[b].units -= moved;
      if (here.supply[a].units == 0) ++a;
      if (here.demand[b].units == 0) ++b;
    }
    here.supply.erase(here.supply.begin(), here.supply.begin() + static_cast<std::ptrdiff_t>(a));
    here.demand.erase(here.demand.begin(), here.demand.begin() + static_cast<std::ptrdiff_t>(b));
    pending[node] = std::move(here);
  }

  // Merge duplicate (row, col) pairs produced at different nodes.
  std::map<std::pair<int, int>, std::int64_t> merged;
  for (const Flow& f : flows) merged[{f.row, f.col}] += f.units;
  std::vector<Flow> out;
  out.reserve(merged.size());
  for (auto& [key, units] : merged) out.push_back({key.first, key.second, units});
  return out;
}

void make_support_acyclic(std::vector<Flow>& flows, const CostFn& cost) {
  // Support graph nodes: rows first, then columns, both compacted.
  for (;;) {
    std::map<int, int> row_id, col_id;
    for (const Flow& f : flows) {
      row_id.emplace(f.row, 0);
      col_id.emplace(f.col, 0);
    }
    int next = 0;
    for (auto& [k, v] : row_id) v = next++;
    for (auto& [k, v] : col_id) v = next++;

    std::vector<int> parent(next);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<std::vector<std::pair<int, int>>> forest(next);  // (neighbor, flow index)
    int closing = -1;
    for (int idx = 0; idx < static_cast<int>(flows.size()); ++idx) {
      int u = row_id[flows[idx].row], v = col_id[flows[idx].col];
      int ru = find(u), rv = find(v);
      if (ru == rv) {
        closing = idx;
        break;
      }
      parent[ru] = rv;
      forest[u].emplace_back(v, idx);
      forest[v].emplace_back(u, idx);
    }
    if (closing < 0) return;

    // Path in the forest from the closing edge's column back to its row.
    const int start = col_id[flows[closing].col];
    const int goal = row_id[flows[closing].row];
    std::vector<std::pair<int, int>> via(next, {-1, -1});
    std::vector<bool> seen(next, false);
    std::queue<int> queue;
    queue.push(start);
    seen[start] = true;
    while (!queue.empty() && !seen[goal]) {
      int u = queue.front();
      queue.pop();
      for (auto [v, idx] : forest[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        via[v] = {u, idx};
        queue.push(v);
      }
    }
    // Cycle: closing edge (+), then alternating signs along the path.
    std::vector<int> cycle{closing};
    for (int v = goal; v != start; v = via[v].first) cycle.push_back(via[v].second);
    // The path was collected goal -> start; signs alternate from the closing
    // edge either way because the cycle has even length.
    Cost delta = 0;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const Flow& f = flows[cycle[k]];
      delta += (k % 2 == 0 ? 1 : -1) * cost(f.row, f.col);
    }
    const int sign = delta <= 0 ? 1 : -1;
    std::int64_t eps = std::numeric_limits<std::int64_t>::max();
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      int s = (k % 2 == 0 ? 1 : -1) * sign;
      if (s < 0) eps = std::min(eps, flows[cycle[k]].units);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      int s = (k % 2 == 0 ? 1 : -1) * sign;
      flows[cycle[k]].units += s * eps;
    }
    std::erase_if(flows, [](const Flow& f) { return f.units == 0; });
  }
}

Cost total_cost(std::span<const Flow> flows, const CostFn& cost) {
  Cost sum = 0;
  for (const Flow& f : flows) sum += f.units * cost(f.row, f.col);
  return sum;
}

}  // namespace fairbias
