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

#include "transshipment.hpp"

namespace fairbias {

CouplingPlan solve_transshipment(const RequestDistribution& requests, const Metric& metric) {
  const int n = metric.size();
  require(requests.size() == n, "distribution size must match the metric");
  const std::int64_t w = requests.total();
  DemandProfile profile;
  profile.scale = static_cast<std::int64_t>(n) * w;
  profile.left.resize(n);
  for (int i = 0; i < n; ++i) profile.left[i] = static_cast<std::int64_t>(n) * requests.weight(i);
  profile.right.assign(n, w);

  CouplingPlan plan;
  plan.x = solve_min_cost(profile, metric);
  plan.rows.assign(n, {});
  for (const MatchEntry& e : plan.x.entries) plan.rows[e.server].emplace_back(e.location, e.units);
  return plan;
}

PointId relocate(PointId request, const CouplingPlan& plan, Rng& rng) {
  require(request >= 0 && request < static_cast<PointId>(plan.rows.size()),
          "request location out of range");
  const auto& row = plan.rows[request];
  require(!row.empty(), "request at a location with zero probability");
  if (row.size() == 1) return row.front().first;
  std::vector<std::int64_t> weights;
  weights.reserve(row.size());
  for (const auto& [target, units] : row) weights.push_back(units);
  return row[sample_weighted(rng, weights)].first;
}

WrappedResult run_wrapped(OnlineMatcher& matcher, const Metric& charge, const CouplingPlan* plan,
                          std::span<const PointId> stream, Rng& rng) {
  require(static_cast<int>(stream.size()) == charge.size(), "stream length must equal n");
  matcher.reset();
  WrappedResult out;
  out.result.algorithm = std::string(matcher.tag());
  for (PointId r : stream) {
    const PointId moved = plan ? relocate(r, *plan, rng) : r;
    const PointId server = matcher.match(moved, rng);
    const Cost cost = charge.dist(server, r);
    out.result.assignments.push_back({r, server, cost});
    out.result.step_costs.push_back(cost);
    out.result.total_cost += cost;
    out.relocation_cost += charge.dist(moved, r);
    out.relocated_cost += charge.dist(server, moved);
  }
  return out;
}

}  // namespace fairbias
