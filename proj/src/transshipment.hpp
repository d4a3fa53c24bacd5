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

// Reduction from an arbitrary request distribution D to the uniform one.
// The coupling plan moves D onto the uniform distribution over server
// locations at minimum cost; each arrival at r is relocated to j with
// probability x_{r,j} / p_r, which makes relocated arrivals uniform, and the
// uniform-distribution algorithm then serves the relocated location.

#ifndef FAIRBIAS_TRANSSHIPMENT_HPP_
#define FAIRBIAS_TRANSSHIPMENT_HPP_

#include <span>
#include <utility>
#include <vector>

#include "b_matching.hpp"
#include "distribution.hpp"
#include "fair_bias.hpp"
#include "metric.hpp"
#include "rng.hpp"

namespace fairbias {

struct CouplingPlan {
  /// server = source location i (mass p_i), location = target j (mass 1/n).
  FractionalMatching x;
  std::vector<std::vector<std::pair<PointId, std::int64_t>>> rows;

  Rational lp_value() const { return x.value(); }
  /// n * LP, the additive term in the reduction's cost bound.
  Rational m_value() const { return Rational(static_cast<std::int64_t>(rows.size())) * x.value(); }
};

CouplingPlan solve_transshipment(const RequestDistribution& requests, const Metric& metric);

/// Throws kInvalidArgument if r carries no mass. A row with a single target
/// is returned without consuming randomness.
PointId relocate(PointId request, const CouplingPlan& plan, Rng& rng);

struct WrappedResult {
  MatchingResult result;       // costs charged as dist(server, original request)
  Cost relocation_cost = 0;    // sum of dist(request, relocated request)
  Cost relocated_cost = 0;     // sum of dist(server, relocated request)
};

/// Runs one episode of matcher (reset first) on the stream. Requests are
/// relocated through plan when it is non-null, the matcher sees the
/// relocated location, and costs are charged on the charge metric.
WrappedResult run_wrapped(OnlineMatcher& matcher, const Metric& charge, const CouplingPlan* plan,
                          std::span<const PointId> stream, Rng& rng);

}  // namespace fairbias

#endif  // FAIRBIAS_TRANSSHIPMENT_HPP_
