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

#include "generators.hpp"

#include <cstdlib>

namespace fairbias {

std::shared_ptr<const WeightedTree> random_tree(int n, Rng& rng, Cost max_length) {
  require(n >= 1, "tree needs at least one point");
  require(max_length >= 1, "max_length must be positive");
  std::vector<WeightedTree::Edge> edges;
  std::vector<int> points(static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i) {
    const int parent = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i)));
    const Cost length = 1 + static_cast<Cost>(uniform_below(rng, static_cast<std::uint64_t>(max_length)));
    edges.push_back({parent, i, length});
  }
  for (int i = 0; i < n; ++i) {
    edges.push_back({i, n + i, 0});
    points[i] = n + i;
  }
  return std::make_shared<const WeightedTree>(2 * n, std::move(edges), std::move(points));
}

std::shared_ptr<const WeightedTree> star_tree(int n, Cost length) {
  require(n >= 1, "star needs at least one point");
  std::vector<WeightedTree::Edge> edges;
  std::vector<int> points;
  for (int i = 0; i < n; ++i) {
    edges.push_back({0, i + 1, length});
    points.push_back(i + 1);
  }
  return std::make_shared<const WeightedTree>(n + 1, std::move(edges), std::move(points));
}

Metric uniform_metric(int n) {
  require(n >= 1, "metric needs at least one point");
  std::vector<Cost> d(static_cast<std::size_t>(n) * n, 1);
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i) * n + i] = 0;
  return Metric::from_matrix(n, std::move(d));
}

Metric random_grid_metric(int n, int side, Rng& rng) {
  require(n >= 1 && side >= 1, "grid needs points and a positive side");
  std::vector<std::pair<Cost, Cost>> at(static_cast<std::size_t>(n));
  for (auto& [x, y] : at) {
    x = static_cast<Cost>(uniform_below(rng, static_cast<std::uint64_t>(side)));
    y = static_cast<Cost>(uniform_below(rng, static_cast<std::uint64_t>(side)));
  }
  std::vector<Cost> d(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d[static_cast<std::size_t>(i) * n + j] =
          std::abs(at[i].first - at[j].first) + std::abs(at[i].second - at[j].second);
  return Metric::from_matrix(n, std::move(d));
}

WeightMatrix random_weights(int n, Cost max_weight, Rng& rng) {
  require(max_weight >= 0, "negative max weight");
  std::vector<Cost> w(static_cast<std::size_t>(n) * n);
  for (auto& v : w) v = static_cast<Cost>(uniform_below(rng, static_cast<std::uint64_t>(max_weight) + 1));
  return WeightMatrix(n, std::move(w));
}

RequestDistribution geometric_distribution(int n) {
  require(n >= 1 && n <= 62, "geometric distribution supports 1 <= n <= 62");
  std::vector<std::int64_t> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[i] = std::int64_t{1} << (n - 1 - i);
  return RequestDistribution(std::move(w));
}

Metric nonmetric_instance(int n) {
  require(n >= 4 && n % 2 == 0, "the non-metric construction needs an even n >= 4");
  require(n <= 60, "2^(n/2) must fit the cost type");
  const Cost big = Cost{1} << (n / 2);
  std::vector<Cost> c(static_cast<std::size_t>(n) * n, 1);
  for (int s = 0; s < n; ++s) {
    const bool first_half = s < n / 2;
    c[static_cast<std::size_t>(s) * n + (n - 2)] = first_half ? 1 : big;
    c[static_cast<std::size_t>(s) * n + (n - 1)] = first_half ? big : 1;
  }
  return Metric::unchecked(n, std::move(c));
}

}  // namespace fairbias
