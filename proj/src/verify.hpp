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

// Verifiers for the structural facts the algorithm's analysis rests on.

#ifndef FAIRBIAS_VERIFY_HPP_
#define FAIRBIAS_VERIFY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metric.hpp"

namespace fairbias {

struct ChiSquareRow {
  int k = 0;
  int categories = 0;
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
};

struct StructureReport {
  int n = 0;
  long episodes = 0;
  std::vector<ChiSquareRow> rows;  // k = 1 .. n-1
  bool passed(double alpha = 0.01) const;
  std::string text() const;
};

/// Runs uniform-stream episodes and tests, for every k, whether the free set
/// after n - k arrivals is uniform over the k-subsets. n <= 16.
StructureReport verify_structure_lemma(const Metric& metric, long episodes, std::uint64_t seed);
/// Same on a random tree with n points drawn from seed.
StructureReport verify_structure_lemma(int n, long episodes, std::uint64_t seed);

struct ReplacementRow {
  int k = 0;
  Rational without_replacement;  // mean of M over uniform k-subsets
  Rational with_replacement;     // mean of M over k i.i.d. uniform draws
  bool holds() const { return without_replacement <= with_replacement; }
};

struct ReplacementReport {
  std::vector<ReplacementRow> rows;
  bool passed() const;
  std::string text() const;
};

/// Exact enumeration of all subsets and multisets; n <= 6.
ReplacementReport verify_replacement(const Metric& metric);

struct DecompositionReport {
  long trials = 0;
  double alg_mean = 0, alg_se = 0;
  double sum_mean = 0, sum_se = 0;  // sum over k of M at an independent uniform k-subset
  std::optional<Rational> exact_sum;  // by subset enumeration when n <= 12
  bool passed() const;
  std::string text() const;
};

DecompositionReport verify_cost_decomposition(const Metric& metric, long trials, std::uint64_t seed);

struct IdentityReport {
  int instances = 0;
  int failures = 0;
  int nontrivial = 0;  // instances whose input actually needed the transformation
  std::string first_failure;
  bool passed() const { return instances > 0 && failures == 0; }
  std::string text() const;
};

/// M(T) = (n/|T| - 1) M(S \ T) on random instances with 2 <= n <= max_n.
IdentityReport verify_scaling(int instances, std::uint64_t seed, int max_n = 8);

/// canonicalize keeps the value and reaches x_ii = min(l_i, r_i) on random
/// optimal inputs that were first pushed off the diagonal by cost-neutral
/// exchanges.
IdentityReport verify_match_to_self(int instances, std::uint64_t seed, int max_n = 8);

struct FrtReport {
  int samples = 0;
  long dominance_violations = 0;
  double mean_stretch = 0;     // per-sample average of d_T / d over pairs with d > 0
  double se_quarter = 0;       // standard error over the first samples / 4
  double se_all = 0;
  bool passed() const;
  std::string text() const;
};

FrtReport verify_frt(const Metric& metric, int samples, std::uint64_t seed);

}  // namespace fairbias

#endif  // FAIRBIAS_VERIFY_HPP_
