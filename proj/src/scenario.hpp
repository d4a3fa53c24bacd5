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

// Seeded Monte Carlo trials of an online algorithm against the offline
// optimum of the same realized request stream.
//
// Scenario file: "key = value" lines, '#' comments.
//   metric        line | tree-random | star | uniform | grid | random-weights
//                 | nonmetric | file:<path>
//   n             point count (ignored for file metrics)
//   algorithm     fair-bias | split-match | fair-bias-on-frt | max-weight
//   distribution  uniform | geometric | file:<path>
//   trials, seed, output (CSV path, optional)
//   metric_seed   seed of generated instances (default: seed)
//   spacing, max_length, grid_side, max_weight   generator parameters
//   frt           per-trial | once
//   stream        random | identity
//   record_timing, allow_non_metric   true | false
//
// Trial t uses Rng(seed + t). With record_timing off the millis column is
// 0, so equal scenarios give byte-identical CSV.

#ifndef FAIRBIAS_SCENARIO_HPP_
#define FAIRBIAS_SCENARIO_HPP_

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "b_matching.hpp"
#include "distribution.hpp"
#include "metric.hpp"
#include "transshipment.hpp"

namespace fairbias {

enum class Algorithm { kFairBias, kSplitMatch, kFairBiasOnFrt, kMaxWeight };

std::string_view algorithm_tag(Algorithm a);
Algorithm parse_algorithm(const std::string& tag);

struct Scenario {
  std::string metric = "tree-random";
  int n = 8;
  Algorithm algorithm = Algorithm::kFairBias;
  std::string distribution = "uniform";
  int trials = 100;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> metric_seed;
  std::string output;
  Cost spacing = 1;
  Cost max_length = 100;
  int grid_side = 16;
  Cost max_weight = 100;
  bool frt_per_trial = true;
  bool identity_stream = false;
  bool record_timing = false;
  bool allow_non_metric = false;
};

Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

/// Everything a scenario's trials share.
struct Instance {
  std::shared_ptr<const Metric> metric;        // min-cost scenarios
  std::shared_ptr<const WeightMatrix> weights;  // max-weight scenarios
  std::shared_ptr<const RequestDistribution> distribution;
  std::optional<CouplingPlan> plan;            // non-uniform min-cost scenarios
};

/// Throws kIncompatible for algorithm/metric mismatches.
Instance build_instance(const Scenario& sc);

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  Cost alg_cost = 0;
  Cost opt_cost = 0;
  Cost reloc_cost = 0;
  int steps = 0;
  std::int64_t millis = 0;
  std::vector<Cost> step_costs;
};

struct Summary {
  int trials = 0;
  double mean_alg = 0;
  double mean_opt = 0;
  double ratio = 1;  // ratio of means
  double ci_low = 1;
  double ci_high = 1;
  bool zero_over_zero = false;
  /// Trials where ALG beat OPT (min-cost) or exceeded it (max-weight).
  int order_violations = 0;
};

struct TrialReport {
  std::vector<TrialRecord> records;
  Summary summary;
};

TrialReport run_trials(const Scenario& sc);
TrialReport run_trials(const Scenario& sc, const Instance& instance);

/// Ratio of means with a percentile bootstrap (1000 resamples) for its 95%
/// interval. 0/0 is reported as 1 and flagged.
Summary summarize(const std::vector<TrialRecord>& records, bool maximize, std::uint64_t seed);

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);
std::string format_summary(const Scenario& sc, const Summary& s);

Scenario gen_nonmetric_scenario(int n);

/// The scenario with fair-bias-on-frt as its algorithm.
Summary run_frt_variant(Scenario sc);

}  // namespace fairbias

#endif  // FAIRBIAS_SCENARIO_HPP_
