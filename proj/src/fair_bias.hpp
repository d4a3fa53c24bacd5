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

// FAIR-BIAS: with k free servers S_k, solve the fractional matching M(S_k)
// between S_k and all n locations, and send a request at r to free server s
// with probability n * x_{s,r}. Each server is then matched with probability
// exactly 1/k per step, which keeps S_k a uniformly random k-subset.

#ifndef FAIRBIAS_FAIR_BIAS_HPP_
#define FAIRBIAS_FAIR_BIAS_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "b_matching.hpp"
#include "distribution.hpp"
#include "metric.hpp"
#include "rng.hpp"

namespace fairbias {

struct Assignment {
  PointId request = 0;
  PointId server = 0;
  Cost cost = 0;  // weight, for max-weight runs
};

struct MatchingResult {
  std::vector<Assignment> assignments;
  std::vector<Cost> step_costs;
  Cost total_cost = 0;
  std::uint64_t seed = 0;
  std::string algorithm;
};

/// An online algorithm that irrevocably assigns each arriving request to a
/// free server. One instance per episode; reset() starts a fresh episode.
class OnlineMatcher {
 public:
  virtual ~OnlineMatcher() = default;
  virtual void reset() = 0;
  virtual PointId match(PointId request, Rng& rng) = 0;
  virtual const PointSet& free_servers() const = 0;
  virtual std::string_view tag() const = 0;
};

struct FairBiasOptions {
  /// Run on flagged non-metric instances (canonicalization is skipped there).
  bool allow_non_metric = false;
};

struct OnlineState {
  std::shared_ptr<const Metric> metric;
  PointSet free;
  FractionalMatching current;  // canonical optimum of M(free); empty when free is empty
  std::vector<Assignment> assignments;
  Cost total_cost = 0;

  int k() const { return static_cast<int>(free.count()); }
};

OnlineState init(std::shared_ptr<const Metric> metric, FairBiasOptions options = {});

/// n * x_{s,r} for every point s in units of 1/k (zero for matched servers);
/// the entries sum to exactly k.
std::vector<std::int64_t> sampling_weights(const OnlineState& state, PointId request);

/// Samples a server, removes it from the free set, re-solves M on the rest,
/// and charges dist(server, request).
Assignment step(OnlineState& state, PointId request, Rng& rng);

/// Stream length must equal n. Deterministic in (metric, stream, rng state).
MatchingResult run_episode(std::shared_ptr<const Metric> metric, std::span<const PointId> stream,
                           Rng& rng, FairBiasOptions options = {});

class FairBiasMatcher final : public OnlineMatcher {
 public:
  explicit FairBiasMatcher(std::shared_ptr<const Metric> metric, FairBiasOptions options = {});
  void reset() override;
  PointId match(PointId request, Rng& rng) override;
  const PointSet& free_servers() const override { return state_.free; }
  std::string_view tag() const override { return "fair-bias"; }
  const OnlineState& state() const { return state_; }

 private:
  std::shared_ptr<const Metric> metric_;
  FairBiasOptions options_;
  OnlineState state_;
};

// Max-weight variant: same loop over the max-weight LP with right-side
// demands p_j; a request at r picks s with probability x_{s,r} / p_r.

struct MaxWeightState {
  std::shared_ptr<const WeightMatrix> weights;
  RequestDistribution requests;
  PointSet free;
  FractionalMatching current;
  std::vector<Assignment> assignments;
  Cost total_weight = 0;

  int k() const { return static_cast<int>(free.count()); }
};

MaxWeightState init_max_weight(std::shared_ptr<const WeightMatrix> weights,
                               RequestDistribution requests);

/// x_{s,r} / p_r for every s in units of 1/(k * weight_r); sums to k * weight_r.
std::vector<std::int64_t> sampling_weights(const MaxWeightState& state, PointId request);

/// Throws kInvalidArgument for a request at a location with p = 0.
Assignment step_max_weight(MaxWeightState& state, PointId request, Rng& rng);

MatchingResult run_episode_max_weight(std::shared_ptr<const WeightMatrix> weights,
                                      const RequestDistribution& requests,
                                      std::span<const PointId> stream, Rng& rng);

}  // namespace fairbias

#endif  // FAIRBIAS_FAIR_BIAS_HPP_
