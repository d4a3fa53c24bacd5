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

// Fractional b-matchings between a set of free servers and all request
// locations. Every quantity is an exact rational with one common
// denominator (the profile's scale); entries are stored as integer units
// over that scale, so no floating point enters the solve.

#ifndef FAIRBIAS_B_MATCHING_HPP_
#define FAIRBIAS_B_MATCHING_HPP_

#include <span>
#include <string>
#include <vector>

#include "common.hpp"
#include "distribution.hpp"
#include "metric.hpp"

namespace fairbias {

/// Left (server) and right (location) demands in units of 1/scale. Both
/// sides sum to exactly scale.
struct DemandProfile {
  std::int64_t scale = 1;
  std::vector<std::int64_t> left;
  std::vector<std::int64_t> right;

  Rational left_demand(PointId i) const { return Rational(left[i], scale); }
  Rational right_demand(PointId j) const { return Rational(right[j], scale); }
};

/// Servers in T get 1/|T| each, every location gets 1/n. Scale is n*|T|.
DemandProfile uniform_profile(const PointSet& servers);
/// Multiset of servers (count per point, total k): server i gets count_i/k,
/// every location 1/n. Scale is n*k.
DemandProfile multiset_profile(std::span<const int> counts);

struct MatchEntry {
  PointId server = 0;
  PointId location = 0;
  std::int64_t units = 0;
};

/// Sparse x_{server,location} over a profile, plus its objective value.
struct FractionalMatching {
  DemandProfile profile;
  std::vector<MatchEntry> entries;  // sorted by (server, location), units > 0
  std::int64_t objective_units = 0;  // sum of coefficient * units

  Rational value() const { return Rational(objective_units, profile.scale); }
  std::int64_t units_at(PointId server, PointId location) const;
  Rational at(PointId server, PointId location) const {
    return Rational(units_at(server, location), profile.scale);
  }
  std::size_t support_size() const { return entries.size(); }
};

/// Exact row/column sum check against the profile.
bool is_feasible(const FractionalMatching& x);

/// M(T): optimal fractional min-cost b-matching of T against all locations.
/// Tree- and line-backed metrics use the tree transport; others run
/// successive shortest paths. Metric inputs are canonicalized, and the
/// support is always reduced to a vertex of the transportation polytope.
FractionalMatching solve_min_cost(const PointSet& servers, const Metric& metric);
FractionalMatching solve_min_cost(const DemandProfile& profile, const Metric& metric);

/// Same LP, always through the min-cost flow route (used to cross-check the
/// tree transport).
FractionalMatching solve_min_cost_flow(const DemandProfile& profile, const Metric& metric);

/// Local exchange to x_ii = min(left_i, right_i) at every point. Preserves
/// feasibility; on metric inputs it never increases the value.
FractionalMatching canonicalize(FractionalMatching x, const Metric& metric);

/// Non-negative integer weights, w(server, request location).
class WeightMatrix {
 public:
  WeightMatrix(int n, std::vector<Cost> weights);
  int size() const { return n_; }
  Cost at(PointId server, PointId location) const {
    return weights_[static_cast<std::size_t>(server) * n_ + location];
  }
  Cost max_weight() const { return max_; }
  const std::vector<Cost>& values() const { return weights_; }

 private:
  int n_;
  std::vector<Cost> weights_;
  Cost max_ = 0;
};

/// Max-weight b-matching: servers in T get 1/|T|, location j gets p_j.
/// Solved as min cost with costs max_w - w; the shift is removed exactly.
FractionalMatching solve_max_weight(const PointSet& servers, const WeightMatrix& weights,
                                    const RequestDistribution& requests);

struct ScalingCheck {
  Rational lhs;  // M(T)
  Rational rhs;  // (n/|T| - 1) * M(S \ T)
  bool holds() const { return lhs == rhs; }
};

/// Requires 1 <= |T| <= n/2.
ScalingCheck scaling_identity_check(const PointSet& servers, const Metric& metric);

/// Sparse triples "server location num/den", one per line.
std::string dump_triples(const FractionalMatching& x);

}  // namespace fairbias

#endif  // FAIRBIAS_B_MATCHING_HPP_
