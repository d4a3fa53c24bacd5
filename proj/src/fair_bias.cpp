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

#include "fair_bias.hpp"

#include <string>

namespace fairbias {
namespace {

std::vector<std::int64_t> column_units(const FractionalMatching& x, int n, PointId location) {
  std::vector<std::int64_t> units(static_cast<std::size_t>(n), 0);
  for (const MatchEntry& e : x.entries)
    if (e.location == location) units[e.server] += e.units;
  return units;
}

void check_request(int n, PointId request) {
  require(request >= 0 && request < n, "request location " + std::to_string(request) +
                                           " out of range");
}

}  // namespace

OnlineState init(std::shared_ptr<const Metric> metric, FairBiasOptions options) {
  require(metric != nullptr, "null metric");
  if (!metric->is_metric() && !options.allow_non_metric)
    fail(ErrorCode::kNotMetric, "fair-bias needs a metric instance");
  OnlineState state;
  state.metric = std::move(metric);
  state.free = PointSet(static_cast<std::size_t>(state.metric->size()));
  state.free.set();
  state.current = solve_min_cost(state.free, *state.metric);
  return state;
}

std::vector<std::int64_t> sampling_weights(const OnlineState& state, PointId request) {
  check_request(state.metric->size(), request);
  require(state.k() >= 1, "no free servers");
  auto weights = column_units(state.current, state.metric->size(), request);
  std::int64_t total = 0;
  for (auto w : weights) total += w;
  if (total != state.k())
    fail(ErrorCode::kInternal, "sampling weights do not sum to one");
  return weights;
}

Assignment step(OnlineState& state, PointId request, Rng& rng) {
  auto weights = sampling_weights(state, request);
  const auto server = static_cast<PointId>(sample_weighted(rng, weights));
  if (!state.free[server]) fail(ErrorCode::kInternal, "sampled a matched server");

  Assignment a{request, server, state.metric->dist(server, request)};
  state.free.reset(server);
  state.assignments.push_back(a);
  state.total_cost += a.cost;
  if (state.free.any()) {
    state.current = solve_min_cost(state.free, *state.metric);
  } else {
    state.current = {};
  }
  return a;
}

MatchingResult run_episode(std::shared_ptr<const Metric> metric, std::span<const PointId> stream,
                           Rng& rng, FairBiasOptions options) {
  require(metric != nullptr, "null metric");
  require(static_cast<int>(stream.size()) == metric->size(), "stream length must equal n");
  OnlineState state = init(std::move(metric), options);
  MatchingResult result;
  result.algorithm = "fair-bias";
  for (PointId r : stream) {
    Assignment a = step(state, r, rng);
    result.step_costs.push_back(a.cost);
  }
  result.assignments = std::move(state.assignments);
  result.total_cost = state.total_cost;
  return result;
}

FairBiasMatcher::FairBiasMatcher(std::shared_ptr<const Metric> metric, FairBiasOptions options)
    : metric_(std::move(metric)), options_(options), state_(init(metric_, options_)) {}

void FairBiasMatcher::reset() { state_ = init(metric_, options_); }

PointId FairBiasMatcher::match(PointId request, Rng& rng) {
  return step(state_, request, rng).server;
}

MaxWeightState init_max_weight(std::shared_ptr<const WeightMatrix> weights,
                               RequestDistribution requests) {
  require(weights != nullptr, "null weight matrix");
  require(requests.size() == weights->size(), "distribution size must match the weights");
  MaxWeightState state{std::move(weights), std::move(requests), {}, {}, {}, 0};
  state.free = PointSet(static_cast<std::size_t>(state.weights->size()));
  state.free.set();
  state.current = solve_max_weight(state.free, *state.weights, state.requests);
  return state;
}

std::vector<std::int64_t> sampling_weights(const MaxWeightState& state, PointId request) {
  check_request(state.weights->size(), request);
  require(state.k() >= 1, "no free servers");
  require(state.requests.weight(request) > 0,
          "request at location " + std::to_string(request) + " which has probability zero");
  auto weights = column_units(state.current, state.weights->size(), request);
  std::int64_t total = 0;
  for (auto w : weights) total += w;
  if (total != state.k() * state.requests.weight(request))
    fail(ErrorCode::kInternal, "max-weight sampling weights do not sum to one");
  return weights;
}

Assignment step_max_weight(MaxWeightState& state, PointId request, Rng& rng) {
  auto weights = sampling_weights(state, request);
  const auto server = static_cast<PointId>(sample_weighted(rng, weights));
  Assignment a{request, server, state.weights->at(server, request)};
  state.free.reset(server);
  state.assignments.push_back(a);
  state.total_weight += a.cost;
  if (state.free.any()) {
    state.current = solve_max_weight(state.free, *state.weights, state.requests);
  } else {
    state.current = {};
  }
  return a;
}

MatchingResult run_episode_max_weight(std::shared_ptr<const WeightMatrix> weights,
                                      const RequestDistribution& requests,
                                      std::span<const PointId> stream, Rng& rng) {
  require(weights != nullptr, "null weight matrix");
  require(static_cast<int>(stream.size()) == weights->size(), "stream length must equal n");
  MaxWeightState state = init_max_weight(std::move(weights), requests);
  MatchingResult result;
  result.algorithm = "max-weight";
  for (PointId r : stream) result.step_costs.push_back(step_max_weight(state, r, rng).cost);
  result.assignments = std::move(state.assignments);
  result.total_cost = state.total_weight;
  return result;
}

}  // namespace fairbias
