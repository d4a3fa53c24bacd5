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

#include <numeric>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "offline_opt.hpp"
#include "oracles.hpp"

using namespace fairbias;

namespace {

std::vector<int> expand(const RequestMultiset& r) {
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(r.counts.size()); ++j)
    for (int c = 0; c < r.counts[j]; ++c) out.push_back(j);
  return out;
}

RequestMultiset random_requests(int n, Rng& rng) {
  auto stream = RequestDistribution::uniform(n).sample_stream(n, rng);
  return RequestMultiset::from_stream(n, stream);
}

}  // namespace

TEST_CASE("request multisets") {
  std::vector<PointId> stream{2, 0, 2};
  auto r = RequestMultiset::from_stream(3, stream);
  CHECK(r.counts == std::vector<int>{1, 0, 2});
  CHECK(r.total() == 3);
  std::vector<PointId> bad{3};
  CHECK_THROWS_AS(RequestMultiset::from_stream(3, bad), Error);
}

TEST_CASE("hand examples") {
  auto line = build_line_metric(5, 3);
  RequestMultiset identity{{1, 1, 1, 1, 1}};
  CHECK(opt_general(line, identity) == 0);
  CHECK(opt_tree(*line.tree(), identity) == 0);

  auto two = build_line_metric(2, 11);
  RequestMultiset both_at_a{{2, 0}};
  CHECK(opt_general(two, both_at_a) == 11);
  CHECK(opt_cost(two, both_at_a) == 11);

  auto star = star_tree(3, 1);
  RequestMultiset at_leaf{{3, 0, 0}};
  CHECK(opt_tree(*star, at_leaf) == 4);
  CHECK(opt_general(Metric::from_tree(star), at_leaf) == 4);

  RequestMultiset too_many{{3, 1, 0}};
  CHECK_THROWS_AS(opt_tree(*star, too_many), Error);
  CHECK_THROWS_AS(opt_general(Metric::from_tree(star), too_many), Error);
}

TEST_CASE("random line n = 6 against all permutations") {
  Rng rng(31);
  auto line = build_line_metric(6, 2);
  for (int rep = 0; rep < 20; ++rep) {
    auto req = random_requests(6, rng);
    const auto best = oracle::matching_optimum(6, expand(req),
                                               [&](int s, int r) { return line.dist(s, r); });
    CHECK(opt_general(line, req) == best);
    CHECK(opt_cost(line, req) == best);
  }
}

TEST_CASE("general metrics against all permutations") {
  Rng rng(32);
  for (int rep = 0; rep < 20; ++rep) {
    auto m = random_grid_metric(7, 4, rng);
    auto req = random_requests(7, rng);
    CHECK(opt_general(m, req) ==
          oracle::matching_optimum(7, expand(req), [&](int s, int r) { return m.dist(s, r); }));
  }
  auto bad = nonmetric_instance(6);
  RequestMultiset uniform{{1, 1, 1, 1, 1, 1}};
  CHECK(opt_general(bad, uniform) ==
        oracle::matching_optimum(6, expand(uniform), [&](int s, int r) { return bad.dist(s, r); }));
}

TEST_CASE("tree closed form equals the flow optimum") {
  Rng rng(33);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(uniform_below(rng, 30));
    auto tree = random_tree(n, rng);
    auto m = Metric::from_tree(tree);
    auto req = random_requests(n, rng);
    CHECK(opt_tree(*tree, req) == opt_general(m, req));
  }
}

TEST_CASE("max-weight optimum") {
  WeightMatrix constant(4, std::vector<Cost>(16, 7));
  RequestMultiset req{{0, 4, 0, 0}};
  CHECK(opt_max_weight(constant, req) == 28);

  Rng rng(34);
  for (int rep = 0; rep < 20; ++rep) {
    auto w = random_weights(5, 50, rng);
    auto r = random_requests(5, rng);
    CHECK(opt_max_weight(w, r) ==
          oracle::matching_optimum(5, expand(r), [&](int s, int j) { return w.at(s, j); }, -1));
  }
}
