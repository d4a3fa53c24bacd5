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

#include <vector>

#include "b_matching.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fairbias;

namespace {

PointSet set_of(int n, std::initializer_list<int> members) {
  PointSet s(static_cast<std::size_t>(n));
  for (int m : members) s.set(static_cast<std::size_t>(m));
  return s;
}

PointSet from_mask(int n, unsigned mask) {
  PointSet s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1U) s.set(static_cast<std::size_t>(i));
  return s;
}

Rational oracle_value(const DemandProfile& p, const Metric& m) {
  auto best = oracle::transport_optimum(p.left, p.right,
                                        [&](int i, int j) { return m.dist(i, j); });
  return Rational(best, p.scale);
}

void check_solution(const FractionalMatching& x, const Metric& m, std::size_t k) {
  CHECK(is_feasible(x));
  CHECK(x.support_size() <= k + static_cast<std::size_t>(m.size()) - 1);
  std::int64_t objective = 0;
  for (const MatchEntry& e : x.entries) objective += e.units * m.dist(e.server, e.location);
  CHECK(objective == x.objective_units);
  // Match-to-self: co-located demand is served in place.
  for (int i = 0; i < m.size(); ++i)
    CHECK(x.units_at(i, i) == std::min(x.profile.left[i], x.profile.right[i]));
}

std::vector<Metric> small_metrics() {
  Rng rng(21);
  std::vector<Metric> out;
  out.push_back(build_line_metric(4, 1));
  out.push_back(build_line_metric(5, 3));
  out.push_back(Metric::from_tree(star_tree(4, 2)));
  out.push_back(uniform_metric(4));
  out.push_back(random_grid_metric(4, 3, rng));
  out.push_back(Metric::from_tree(random_tree(4, rng, 20)));
  out.push_back(Metric::from_tree(random_tree(5, rng, 20)));
  return out;
}

}  // namespace

TEST_CASE("M(S) is the identity with value 0") {
  auto m = build_line_metric(5, 2);
  auto x = solve_min_cost(set_of(5, {0, 1, 2, 3, 4}), m);
  CHECK(x.value() == Rational(0));
  CHECK(x.support_size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(x.at(i, i) == Rational(1, 5));
}

TEST_CASE("single server on two points") {
  auto m = build_line_metric(2, 7);
  auto x = solve_min_cost(set_of(2, {0}), m);
  CHECK(x.at(0, 0) == Rational(1, 2));
  CHECK(x.at(0, 1) == Rational(1, 2));
  CHECK(x.at(1, 0) == Rational(0));
  CHECK(x.value() == Rational(7, 2));
  CHECK(dump_triples(x) == "0 0 1/2\n0 1 1/2\n");
}

TEST_CASE("line endpoints") {
  auto m = build_line_metric(4, 1);
  auto profile = uniform_profile(set_of(4, {0, 3}));
  CHECK(profile.scale == 8);
  auto x = solve_min_cost(set_of(4, {0, 3}), m);
  CHECK(x.value() == Rational(1, 2));
  CHECK(x.value() == oracle_value(profile, m));
  check_solution(x, m, 2);
}

TEST_CASE("every subset of small metrics matches the oracle") {
  int checked = 0;
  for (const Metric& m : small_metrics()) {
    const int n = m.size();
    for (unsigned mask = 1; mask < (1U << n); ++mask) {
      PointSet t = from_mask(n, mask);
      auto profile = uniform_profile(t);
      auto x = solve_min_cost(t, m);
      auto flow = solve_min_cost_flow(profile, m);
      const Rational expected = oracle_value(profile, m);
      CHECK(x.value() == expected);
      CHECK(flow.value() == expected);
      check_solution(x, m, t.count());
      for (int j = 0; j < n; ++j) {
        Rational column(0);
        for (int i = 0; i < n; ++i) column += x.at(i, j);
        CHECK(column == Rational(1, n));
      }
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("multiset profiles match the oracle") {
  Rng rng(5);
  auto m = Metric::from_tree(random_tree(4, rng, 10));
  const std::vector<std::vector<int>> cases{{2, 0, 0, 0}, {1, 1, 0, 2}, {0, 3, 1, 0}, {1, 1, 1, 1}};
  for (const auto& counts : cases) {
    auto profile = multiset_profile(counts);
    auto x = solve_min_cost(profile, m);
    CHECK(is_feasible(x));
    CHECK(x.value() == oracle_value(profile, m));
  }
  std::vector<int> empty{0, 0, 0, 0};
  CHECK_THROWS_AS(multiset_profile(empty), Error);
}

TEST_CASE("canonicalize") {
  auto m = build_line_metric(3, 1);

  SUBCASE("canonical input unchanged") {
    auto x = solve_min_cost(set_of(3, {0, 2}), m);
    auto y = canonicalize(x, m);
    CHECK(dump_triples(x) == dump_triples(y));
    CHECK(x.value() == y.value());
  }

  SUBCASE("permuted assignment becomes the identity") {
    FractionalMatching x;
    x.profile = uniform_profile(set_of(3, {0, 1, 2}));
    x.entries = {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}};
    x.objective_units = 3 * (1 + 1 + 2);
    REQUIRE(is_feasible(x));
    auto y = canonicalize(x, m);
    CHECK(y.value() == Rational(0));
    for (int i = 0; i < 3; ++i) CHECK(y.at(i, i) == Rational(1, 3));
  }

  SUBCASE("single middle server") {
    FractionalMatching x;
    x.profile = uniform_profile(set_of(3, {1}));
    x.entries = {{1, 2, 1}, {1, 0, 1}, {1, 1, 1}};
    auto y = canonicalize(x, m);
    CHECK(y.at(1, 1) == Rational(1, 3));
    CHECK(y.value() == Rational(2, 3));
    CHECK(y.value() == oracle_value(x.profile, m));
  }

  SUBCASE("non-metric input refused") {
    auto bad = nonmetric_instance(4);
    auto x = solve_min_cost(set_of(4, {0, 1}), bad);
    CHECK_THROWS_AS(canonicalize(x, bad), Error);
  }
}

TEST_CASE("max-weight") {
  const int n = 3;
  SUBCASE("constant weights") {
    WeightMatrix w(n, std::vector<Cost>(9, 6));
    auto x = solve_max_weight(set_of(n, {0, 2}), w, RequestDistribution({1, 2, 3}));
    CHECK(x.value() == Rational(6));
  }
  SUBCASE("single free server") {
    WeightMatrix w(n, {4, 0, 9, 1, 1, 1, 2, 5, 3});
    RequestDistribution p({1, 2, 3});
    auto x = solve_max_weight(set_of(n, {0}), w, p);
    CHECK(x.value() == Rational(4 * 1 + 0 * 2 + 9 * 3, 6));
  }
  SUBCASE("random instances match the oracle") {
    Rng rng(33);
    for (int rep = 0; rep < 40; ++rep) {
      WeightMatrix w = random_weights(n, 9, rng);
      std::vector<std::int64_t> pw(n);
      for (auto& v : pw) v = 1 + static_cast<std::int64_t>(uniform_below(rng, 4));
      RequestDistribution p(pw);
      for (unsigned mask = 1; mask < 8; ++mask) {
        PointSet t = from_mask(n, mask);
        auto x = solve_max_weight(t, w, p);
        CHECK(is_feasible(x));
        auto best = oracle::transport_optimum(
            x.profile.left, x.profile.right, [&](int i, int j) { return w.at(i, j); }, -1);
        CHECK(x.value() == Rational(best, x.profile.scale));
        std::int64_t weight_units = 0;
        for (const MatchEntry& e : x.entries) weight_units += e.units * w.at(e.server, e.location);
        CHECK(x.value() == Rational(weight_units, x.profile.scale));
      }
    }
  }
}

TEST_CASE("scaling identity") {
  auto two = build_line_metric(2, 9);
  auto check = scaling_identity_check(set_of(2, {0}), two);
  CHECK(check.lhs == Rational(9, 2));
  CHECK(check.rhs == Rational(9, 2));
  CHECK(check.holds());

  for (const Metric& m : small_metrics()) {
    const int n = m.size();
    for (unsigned mask = 1; mask < (1U << n); ++mask) {
      PointSet t = from_mask(n, mask);
      if (2 * t.count() > static_cast<std::size_t>(n)) {
        CHECK_THROWS_AS(scaling_identity_check(t, m), Error);
        continue;
      }
      CHECK(scaling_identity_check(t, m).holds());
    }
  }
}
