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

#include <functional>
#include <numeric>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "transport.hpp"

using namespace fairbias;

namespace {

std::vector<std::int64_t> random_amounts(int count, std::int64_t total, Rng& rng, bool allow_zero) {
  std::vector<std::int64_t> v(count, allow_zero ? 0 : 1);
  std::int64_t left = total - (allow_zero ? 0 : count);
  for (std::int64_t u = 0; u < left; ++u) ++v[uniform_below(rng, static_cast<std::uint64_t>(count))];
  return v;
}

bool is_forest(const std::vector<Flow>& flows, int rows) {
  std::vector<int> parent(1024);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const Flow& f : flows) {
    int a = find(f.row), b = find(rows + f.col);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

void check_marginals(const std::vector<Flow>& flows, const std::vector<std::int64_t>& supply,
                     const std::vector<std::int64_t>& demand) {
  std::vector<std::int64_t> r(supply.size(), 0), c(demand.size(), 0);
  for (const Flow& f : flows) {
    CHECK(f.units > 0);
    r[f.row] += f.units;
    c[f.col] += f.units;
  }
  CHECK(r == supply);
  CHECK(c == demand);
}

}  // namespace

TEST_CASE("ssp matches basis enumeration") {
  Rng rng(7);
  for (int rep = 0; rep < 60; ++rep) {
    const int rows = 1 + static_cast<int>(uniform_below(rng, 4));
    const int cols = 1 + static_cast<int>(uniform_below(rng, 4));
    const std::int64_t total = 1 + static_cast<std::int64_t>(uniform_below(rng, 12));
    auto supply = random_amounts(rows, total, rng, true);
    auto demand = random_amounts(cols, total, rng, true);
    std::vector<Cost> c(rows * cols);
    for (auto& x : c) x = static_cast<Cost>(uniform_below(rng, 10));
    CostFn cost = [&](int i, int j) { return c[i * cols + j]; };

    auto flows = solve_transport_ssp(supply, demand, cost);
    check_marginals(flows, supply, demand);
    const auto expected = oracle::transport_optimum(supply, demand, cost);
    CHECK(total_cost(flows, cost) == expected);

    for (std::size_t i = 1; i < flows.size(); ++i)
      CHECK(std::pair(flows[i - 1].row, flows[i - 1].col) < std::pair(flows[i].row, flows[i].col));

    make_support_acyclic(flows, cost);
    check_marginals(flows, supply, demand);
    CHECK(is_forest(flows, rows));
    CHECK(total_cost(flows, cost) == expected);
  }
}

TEST_CASE("ssp is deterministic and rejects bad input") {
  std::vector<std::int64_t> s{2, 2}, d{1, 3};
  CostFn cost = [](int i, int j) { return static_cast<Cost>((i + 1) * (j + 2) % 3); };
  auto a = solve_transport_ssp(s, d, cost);
  auto b = solve_transport_ssp(s, d, cost);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].row == b[i].row);
    CHECK(a[i].col == b[i].col);
    CHECK(a[i].units == b[i].units);
  }
  std::vector<std::int64_t> short_demand{1, 2};
  CHECK_THROWS_AS(solve_transport_ssp(s, short_demand, cost), Error);
  CostFn negative = [](int, int) { return Cost{-1}; };
  CHECK_THROWS_AS(solve_transport_ssp(s, d, negative), Error);
}

TEST_CASE("tree transport matches basis enumeration") {
  Rng rng(9);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 2 + static_cast<int>(uniform_below(rng, 3));
    auto tree = random_tree(n, rng, 9);
    const std::int64_t total = 1 + static_cast<std::int64_t>(uniform_below(rng, 10));
    auto supply = random_amounts(n, total, rng, true);
    auto demand = random_amounts(n, total, rng, true);
    CostFn cost = [&](int i, int j) { return tree_distance(*tree, i, j); };

    auto flows = solve_tree_transport(*tree, supply, demand);
    check_marginals(flows, supply, demand);
    CHECK(total_cost(flows, cost) == oracle::transport_optimum(supply, demand, cost));
    // Co-located mass pairs with itself.
    for (int i = 0; i < n; ++i) {
      std::int64_t self = 0;
      for (const Flow& f : flows)
        if (f.row == i && f.col == i) self = f.units;
      CHECK(self == std::min(supply[i], demand[i]));
    }
  }
}

TEST_CASE("acyclic support on a hand-made cycle") {
  // Two rows and two columns all used: a 4-cycle. Zero costs make both
  // directions neutral.
  std::vector<Flow> flows{{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
  CostFn cost = [](int i, int j) { return Cost{i == j ? 0 : 1}; };
  make_support_acyclic(flows, cost);
  CHECK(is_forest(flows, 2));
  CHECK(total_cost(flows, cost) == 0);
}
