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

#include <cmath>
#include <memory>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "fair_bias.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fairbias;

namespace {

std::shared_ptr<const Metric> share(Metric m) { return std::make_shared<const Metric>(std::move(m)); }

void check_perfect(const MatchingResult& r, std::span<const PointId> stream, int n) {
  REQUIRE(static_cast<int>(r.assignments.size()) == n);
  std::vector<int> used(n, 0);
  Cost total = 0;
  for (int t = 0; t < n; ++t) {
    CHECK(r.assignments[t].request == stream[t]);
    ++used[r.assignments[t].server];
    CHECK(r.step_costs[t] == r.assignments[t].cost);
    total += r.step_costs[t];
  }
  for (int u : used) CHECK(u == 1);
  CHECK(total == r.total_cost);
}

}  // namespace

TEST_CASE("init") {
  auto one = init(share(build_line_metric(1, 1)));
  CHECK(one.k() == 1);
  CHECK(one.current.value() == Rational(0));

  auto line = init(share(build_line_metric(3, 1)));
  CHECK(line.k() == 3);
  CHECK(line.current.value() == Rational(0));

  Rng rng(1);
  auto tree = init(share(Metric::from_tree(random_tree(4, rng))));
  CHECK(tree.k() == 4);
  CHECK(tree.total_cost == 0);
  CHECK(tree.assignments.empty());

  auto bad = share(nonmetric_instance(4));
  try {
    init(bad);
    FAIL("expected a not-metric error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotMetric);
  }
  CHECK(init(bad, {.allow_non_metric = true}).k() == 4);
}

TEST_CASE("step") {
  SUBCASE("k = 1 is forced") {
    auto state = init(share(build_line_metric(3, 4)));
    Rng rng(2);
    step(state, 0, rng);
    step(state, 0, rng);
    REQUIRE(state.k() == 1);
    const PointId last = static_cast<PointId>(state.free.find_first());
    auto w = sampling_weights(state, 2);
    CHECK(w[last] == 1);
    CHECK(std::accumulate(w.begin(), w.end(), std::int64_t{0}) == 1);
    auto a = step(state, 2, rng);
    CHECK(a.server == last);
    CHECK(state.k() == 0);
    CHECK_THROWS_AS(step(state, 1, rng), Error);
  }

  SUBCASE("two points, request at a matches a") {
    auto state = init(share(build_line_metric(2, 5)));
    auto w = sampling_weights(state, 0);
    CHECK(w == std::vector<std::int64_t>{2, 0});
    Rng rng(3);
    auto a = step(state, 0, rng);
    CHECK(a.server == 0);
    CHECK(a.cost == 0);
  }

  SUBCASE("bad request") {
    auto state = init(share(build_line_metric(2, 5)));
    Rng rng(3);
    CHECK_THROWS_AS(step(state, 2, rng), Error);
    CHECK_THROWS_AS(step(state, -1, rng), Error);
  }
}

TEST_CASE("free request location is always matched to itself") {
  Rng gen(4);
  int observed = 0;
  for (int rep = 0; rep < 30; ++rep) {
    auto metric = share(Metric::from_tree(random_tree(7, gen, 30)));
    auto state = init(metric);
    Rng rng(100 + rep);
    for (int t = 0; t < 7; ++t) {
      const PointId r = static_cast<PointId>(uniform_below(rng, 7));
      auto w = sampling_weights(state, r);
      CHECK(std::accumulate(w.begin(), w.end(), std::int64_t{0}) == state.k());
      for (int s = 0; s < 7; ++s)
        if (!state.free[s]) CHECK(w[s] == 0);
      const bool free_here = state.free[r];
      auto a = step(state, r, rng);
      if (free_here) {
        CHECK(a.server == r);
        ++observed;
      }
    }
  }
  CHECK(observed > 30);
}

TEST_CASE("episodes") {
  SUBCASE("identity stream costs nothing") {
    Rng gen(5);
    auto metric = share(Metric::from_tree(random_tree(10, gen)));
    std::vector<PointId> stream(10);
    std::iota(stream.begin(), stream.end(), 0);
    Rng rng(6);
    auto r = run_episode(metric, stream, rng);
    check_perfect(r, stream, 10);
    CHECK(r.total_cost == 0);
    CHECK(r.algorithm == "fair-bias");
  }

  SUBCASE("n = 1") {
    std::vector<PointId> stream{0};
    Rng rng(7);
    auto r = run_episode(share(build_line_metric(1, 1)), stream, rng);
    CHECK(r.assignments.at(0).server == 0);
    CHECK(r.total_cost == 0);
  }

  SUBCASE("both requests at a cost D") {
    auto metric = share(build_line_metric(2, 13));
    std::vector<PointId> stream{0, 0};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Rng rng(seed);
      CHECK(run_episode(metric, stream, rng).total_cost == 13);
    }
  }

  SUBCASE("random streams give perfect matchings and are reproducible") {
    Rng gen(8);
    auto metric = share(random_grid_metric(9, 4, gen));
    for (int rep = 0; rep < 20; ++rep) {
      auto stream = RequestDistribution::uniform(9).sample_stream(9, gen);
      Rng a(rep), b(rep);
      auto ra = run_episode(metric, stream, a);
      auto rb = run_episode(metric, stream, b);
      check_perfect(ra, stream, 9);
      CHECK(ra.total_cost == rb.total_cost);
      for (int t = 0; t < 9; ++t) CHECK(ra.assignments[t].server == rb.assignments[t].server);
    }
    std::vector<PointId> short_stream{0, 1};
    Rng rng(0);
    CHECK_THROWS_AS(run_episode(metric, short_stream, rng), Error);
  }

  SUBCASE("matcher interface") {
    auto metric = share(build_line_metric(4, 1));
    FairBiasMatcher m(metric);
    CHECK(m.tag() == "fair-bias");
    Rng rng(9);
    for (PointId r : {3, 2, 1, 0}) CHECK(m.match(r, rng) == r);
    CHECK(m.free_servers().none());
    m.reset();
    CHECK(m.free_servers().count() == 4);
  }
}

TEST_CASE("max-weight variant") {
  SUBCASE("constant weights") {
    auto w = std::make_shared<const WeightMatrix>(3, std::vector<Cost>(9, 5));
    std::vector<PointId> stream{1, 1, 2};
    Rng rng(10);
    auto r = run_episode_max_weight(w, RequestDistribution({1, 1, 1}), stream, rng);
    check_perfect(r, stream, 3);
    CHECK(r.total_cost == 15);
    CHECK(r.algorithm == "max-weight");
  }

  SUBCASE("last server forced and weights sum") {
    Rng gen(11);
    auto w = std::make_shared<const WeightMatrix>(random_weights(4, 9, gen));
    RequestDistribution p({1, 2, 3, 4});
    auto state = init_max_weight(w, p);
    Rng rng(12);
    for (PointId r : {3, 0, 2}) {
      auto sw = sampling_weights(state, r);
      CHECK(std::accumulate(sw.begin(), sw.end(), std::int64_t{0}) == state.k() * p.weight(r));
      step_max_weight(state, r, rng);
    }
    const PointId last = static_cast<PointId>(state.free.find_first());
    CHECK(step_max_weight(state, 1, rng).server == last);
  }

  SUBCASE("zero-probability request is rejected") {
    auto w = std::make_shared<const WeightMatrix>(2, std::vector<Cost>{1, 2, 3, 4});
    std::vector<PointId> stream{0, 1};
    Rng rng(13);
    CHECK_THROWS_AS(run_episode_max_weight(w, RequestDistribution({1, 0}), stream, rng), Error);
  }

  SUBCASE("at least half of OPT on three servers") {
    const int n = 3;
    Rng gen(14);
    auto w = std::make_shared<const WeightMatrix>(random_weights(n, 20, gen));
    RequestDistribution p({1, 2, 3});
    // Exact E[OPT] over all 27 streams.
    double opt = 0.0;
    for (int code = 0; code < 27; ++code) {
      std::vector<int> s{code % 3, code / 3 % 3, code / 9};
      double prob = 1.0;
      for (int r : s) prob *= static_cast<double>(p.weight(r)) / 6.0;
      opt += prob * static_cast<double>(oracle::matching_optimum(
                        n, s, [&](int a, int b) { return w->at(a, b); }, -1));
    }
    const int episodes = 100000;
    double sum = 0.0, sq = 0.0;
    Rng rng(15);
    for (int e = 0; e < episodes; ++e) {
      auto stream = p.sample_stream(n, rng);
      const auto v = static_cast<double>(run_episode_max_weight(w, p, stream, rng).total_cost);
      sum += v;
      sq += v * v;
    }
    const double mean = sum / episodes;
    const double se = std::sqrt((sq / episodes - mean * mean) / episodes);
    CHECK(mean >= 0.5 * opt - 3.0 * se);
    CHECK(mean <= opt + 3.0 * se);
  }
}
