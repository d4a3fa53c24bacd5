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

#include "b_matching.hpp"

#include <algorithm>
#include <sstream>

#include "transport.hpp"

namespace fairbias {
namespace {

FractionalMatching from_flows(DemandProfile profile, const std::vector<Flow>& flows) {
  FractionalMatching x;
  x.profile = std::move(profile);
  x.entries.reserve(flows.size());
  for (const Flow& f : flows) x.entries.push_back({f.row, f.col, f.units});
  std::sort(x.entries.begin(), x.entries.end(), [](const MatchEntry& a, const MatchEntry& b) {
    return std::pair(a.server, a.location) < std::pair(b.server, b.location);
  });
  return x;
}

std::vector<Flow> to_flows(const FractionalMatching& x) {
  std::vector<Flow> flows;
  flows.reserve(x.entries.size());
  for (const MatchEntry& e : x.entries) flows.push_back({e.server, e.location, e.units});
  return flows;
}

void check_profile(const DemandProfile& profile, int n) {
  require(static_cast<int>(profile.left.size()) == n &&
              static_cast<int>(profile.right.size()) == n,
          "demand profile does not match the instance size");
  std::int64_t l = 0, r = 0;
  for (auto v : profile.left) l += v;
  for (auto v : profile.right) r += v;
  require(l == profile.scale && r == profile.scale, "demand profile sides must sum to one");
}

Cost min_cost_objective(const FractionalMatching& x, const Metric& metric) {
  Cost sum = 0;
  for (const MatchEntry& e : x.entries) sum += e.units * metric.dist(e.server, e.location);
  return sum;
}

}  // namespace

DemandProfile uniform_profile(const PointSet& servers) {
  const auto n = static_cast<std::int64_t>(servers.size());
  const auto k = static_cast<std::int64_t>(servers.count());
  require(k >= 1, "server set must be non-empty");
  DemandProfile profile;
  profile.scale = n * k;
  profile.left.assign(servers.size(), 0);
  for (std::size_t i = 0; i < servers.size(); ++i)
    if (servers[i]) profile.left[i] = n;
  profile.right.assign(servers.size(), k);
  return profile;
}

DemandProfile multiset_profile(std::span<const int> counts) {
  const auto n = static_cast<std::int64_t>(counts.size());
  std::int64_t k = 0;
  for (int c : counts) {
    require(c >= 0, "negative multiplicity");
    k += c;
  }
  require(k >= 1, "server multiset must be non-empty");
  DemandProfile profile;
  profile.scale = n * k;
  profile.left.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) profile.left[i] = n * counts[i];
  profile.right.assign(counts.size(), k);
  return profile;
}

std::int64_t FractionalMatching::units_at(PointId server, PointId location) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), std::pair(server, location),
                             [](const MatchEntry& e, const std::pair<PointId, PointId>& key) {
                               return std::pair(e.server, e.location) < key;
                             });
  if (it != entries.end() && it->server == server && it->location == location) return it->units;
  return 0;
}

bool is_feasible(const FractionalMatching& x) {
  const auto& p = x.profile;
  std::vector<std::int64_t> rows(p.left.size(), 0), cols(p.right.size(), 0);
  for (const MatchEntry& e : x.entries) {
    if (e.units < 0) return false;
    if (e.server < 0 || e.server >= static_cast<PointId>(rows.size())) return false;
    if (e.location < 0 || e.location >= static_cast<PointId>(cols.size())) return false;
    rows[e.server] += e.units;
    cols[e.location] += e.units;
  }
  return rows == p.left && cols == p.right;
}

FractionalMatching solve_min_cost_flow(const DemandProfile& profile, const Metric& metric) {
  check_profile(profile, metric.size());
  CostFn cost = [&metric](int s, int r) { return metric.dist(s, r); };
  auto flows = solve_transport_ssp(profile.left, profile.right, cost);
  auto x = from_flows(profile, flows);
  x.objective_units = min_cost_objective(x, metric);
  return x;
}

FractionalMatching solve_min_cost(const DemandProfile& profile, const Metric& metric) {
  check_profile(profile, metric.size());
  FractionalMatching x;
  if (const WeightedTree* tree = metric.tree()) {
    x = from_flows(profile, solve_tree_transport(*tree, profile.left, profile.right));
  } else {
    x = solve_min_cost_flow(profile, metric);
  }
  if (metric.is_metric()) x = canonicalize(std::move(x), metric);
  CostFn cost = [&metric](int s, int r) { return metric.dist(s, r); };
  auto flows = to_flows(x);
  make_support_acyclic(flows, cost);
  x = from_flows(std::move(x.profile), flows);
  x.objective_units = min_cost_objective(x, metric);
  return x;
}

FractionalMatching solve_min_cost(const PointSet& servers, const Metric& metric) {
  require(static_cast<int>(servers.size()) == metric.size(), "server set size mismatch");
  return solve_min_cost(uniform_profile(servers), metric);
}

FractionalMatching canonicalize(FractionalMatching x, const Metric& metric) {
  if (!metric.is_metric())
    fail(ErrorCode::kNotMetric, "canonicalize relies on the triangle inequality");
  const int n = metric.size();
  check_profile(x.profile, n);
  std::vector<std::int64_t> units(static_cast<std::size_t>(n) * n, 0);
  auto at = [&](int s, int r) -> std::int64_t& { return units[static_cast<std::size_t>(s) * n + r]; };
  for (const MatchEntry& e : x.entries) at(e.server, e.location) += e.units;

  for (int i = 0; i < n; ++i) {
    const std::int64_t target = std::min(x.profile.left[i], x.profile.right[i]);
    while (at(i, i) < target) {
      // Server i ships to some j != i while location i is served by j' != i:
      // reroute so that i serves itself and j' serves j.
      int j = -1, jp = -1;
      for (int c = 0; c < n && j < 0; ++c)
        if (c != i && at(i, c) > 0) j = c;
      for (int s = 0; s < n && jp < 0; ++s)
        if (s != i && at(s, i) > 0) jp = s;
      if (j < 0 || jp < 0) fail(ErrorCode::kInternal, "canonicalize: input is not feasible");
      std::int64_t eps = std::min({at(i, j), at(jp, i), target - at(i, i)});
      at(i, i) += eps;
      at(jp, j) += eps;
      at(i, j) -= eps;
      at(jp, i) -= eps;
    }
  }

  x.entries.clear();
  for (int s = 0; s < n; ++s)
    for (int r = 0; r < n; ++r)
      if (at(s, r) > 0) x.entries.push_back({s, r, at(s, r)});
  x.objective_units = min_cost_objective(x, metric);
  return x;
}

WeightMatrix::WeightMatrix(int n, std::vector<Cost> weights) : n_(n), weights_(std::move(weights)) {
  require(n >= 1, "weight matrix needs at least one point");
  require(weights_.size() == static_cast<std::size_t>(n) * n, "weight matrix must be n x n");
  for (Cost w : weights_) {
    require(w >= 0, "weights must be non-negative");
    max_ = std::max(max_, w);
  }
}

FractionalMatching solve_max_weight(const PointSet& servers, const WeightMatrix& weights,
                                    const RequestDistribution& requests) {
  const int n = weights.size();
  require(static_cast<int>(servers.size()) == n && requests.size() == n,
          "max-weight instance sizes disagree");
  const auto k = static_cast<std::int64_t>(servers.count());
  require(k >= 1, "server set must be non-empty");

  DemandProfile profile;
  profile.scale = k * requests.total();
  profile.left.assign(n, 0);
  for (int i = 0; i < n; ++i)
    if (servers[i]) profile.left[i] = requests.total();
  profile.right.resize(n);
  for (int j = 0; j < n; ++j) profile.right[j] = k * requests.weight(j);

  const Cost shift = weights.max_weight();
  CostFn cost = [&weights, shift](int s, int r) { return shift - weights.at(s, r); };
  auto flows = solve_transport_ssp(profile.left, profile.right, cost);
  make_support_acyclic(flows, cost);
  auto x = from_flows(std::move(profile), flows);
  // sum w*x = shift * scale - sum (shift - w)*x, all in units of 1/scale.
  x.objective_units = shift * x.profile.scale - total_cost(flows, cost);
  return x;
}

ScalingCheck scaling_identity_check(const PointSet& servers, const Metric& metric) {
  const auto n = static_cast<std::int64_t>(metric.size());
  const auto k = static_cast<std::int64_t>(servers.count());
  require(static_cast<std::int64_t>(servers.size()) == n, "server set size mismatch");
  require(k >= 1 && 2 * k <= n, "scaling identity needs 1 <= |T| <= n/2");
  PointSet rest = ~servers;
  ScalingCheck check;
  check.lhs = solve_min_cost(servers, metric).value();
  check.rhs = Rational(n - k, k) * solve_min_cost(rest, metric).value();
  return check;
}

std::string dump_triples(const FractionalMatching& x) {
  std::ostringstream out;
  for (const MatchEntry& e : x.entries) {
    Rational v(e.units, x.profile.scale);
    out << e.server << ' ' << e.location << ' ' << v.numerator() << '/' << v.denominator() << '\n';
  }
  return out.str();
}

}  // namespace fairbias
