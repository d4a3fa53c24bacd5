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

#include "scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "fair_bias.hpp"
#include "frt.hpp"
#include "generators.hpp"
#include "hier_tree.hpp"
#include "metric_io.hpp"
#include "offline_opt.hpp"

namespace fairbias {
namespace {

constexpr std::uint64_t kBootstrapSalt = 0x9e3779b97f4a7c15ULL;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(ErrorCode::kParse, key + " must be true or false");
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  std::istringstream in(v);
  T out{};
  if (!(in >> out) || !(in >> std::ws).eof()) fail(ErrorCode::kParse, key + ": bad number '" + v + "'");
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

}  // namespace

std::string_view algorithm_tag(Algorithm a) {
  switch (a) {
    case Algorithm::kFairBias: return "fair-bias";
    case Algorithm::kSplitMatch: return "split-match";
    case Algorithm::kFairBiasOnFrt: return "fair-bias-on-frt";
    case Algorithm::kMaxWeight: return "max-weight";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& tag) {
  for (auto a : {Algorithm::kFairBias, Algorithm::kSplitMatch, Algorithm::kFairBiasOnFrt,
                 Algorithm::kMaxWeight})
    if (algorithm_tag(a) == tag) return a;
  fail(ErrorCode::kParse, "unknown algorithm '" + tag + "'");
}

Scenario parse_scenario(std::istream& in) {
  Scenario sc;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));
    if (key == "metric") sc.metric = v;
    else if (key == "n") sc.n = parse_number<int>(key, v);
    else if (key == "algorithm") sc.algorithm = parse_algorithm(v);
    else if (key == "distribution") sc.distribution = v;
    else if (key == "trials") sc.trials = parse_number<int>(key, v);
    else if (key == "seed") sc.seed = parse_number<std::uint64_t>(key, v);
    else if (key == "metric_seed") sc.metric_seed = parse_number<std::uint64_t>(key, v);
    else if (key == "output") sc.output = v;
    else if (key == "spacing") sc.spacing = parse_number<Cost>(key, v);
    else if (key == "max_length") sc.max_length = parse_number<Cost>(key, v);
    else if (key == "grid_side") sc.grid_side = parse_number<int>(key, v);
    else if (key == "max_weight") sc.max_weight = parse_number<Cost>(key, v);
    else if (key == "frt") {
      if (v != "per-trial" && v != "once") fail(ErrorCode::kParse, "frt must be per-trial or once");
      sc.frt_per_trial = v == "per-trial";
    } else if (key == "stream") {
      if (v != "random" && v != "identity") fail(ErrorCode::kParse, "stream must be random or identity");
      sc.identity_stream = v == "identity";
    } else if (key == "record_timing") sc.record_timing = parse_bool(key, v);
    else if (key == "allow_non_metric") sc.allow_non_metric = parse_bool(key, v);
    else fail(ErrorCode::kParse, "unknown scenario key '" + key + "'");
  }
  require(sc.trials >= 1, "trials must be at least 1");
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  return parse_scenario(in);
}

Instance build_instance(const Scenario& sc) {
  require(sc.trials >= 1, "trials must be at least 1");
  Rng gen(sc.metric_seed.value_or(sc.seed));
  Instance inst;
  const bool max_weight = sc.algorithm == Algorithm::kMaxWeight;

  if (max_weight) {
    if (sc.metric == "random-weights") {
      require(sc.n >= 1, "n must be positive");
      inst.weights = std::make_shared<const WeightMatrix>(random_weights(sc.n, sc.max_weight, gen));
    } else if (starts_with(sc.metric, "file:")) {
      Metric m = load_metric(sc.metric.substr(5));
      std::vector<Cost> w(m.matrix().begin(), m.matrix().end());
      inst.weights = std::make_shared<const WeightMatrix>(m.size(), std::move(w));
    } else {
      fail(ErrorCode::kIncompatible, "max-weight needs metric = random-weights or a file");
    }
  } else {
    Metric m = [&]() -> Metric {
      if (sc.metric == "line") return build_line_metric(sc.n, sc.spacing);
      if (sc.metric == "tree-random") return Metric::from_tree(random_tree(sc.n, gen, sc.max_length));
      if (sc.metric == "star") return Metric::from_tree(star_tree(sc.n, sc.spacing));
      if (sc.metric == "uniform") return uniform_metric(sc.n);
      if (sc.metric == "grid") return random_grid_metric(sc.n, sc.grid_side, gen);
      if (sc.metric == "nonmetric") return nonmetric_instance(sc.n);
      if (starts_with(sc.metric, "file:")) return load_metric(sc.metric.substr(5));
      if (sc.metric == "random-weights")
        fail(ErrorCode::kIncompatible, "random-weights is only for max-weight");
      fail(ErrorCode::kParse, "unknown metric '" + sc.metric + "'");
    }();
    if (!m.is_metric() && !sc.allow_non_metric)
      fail(ErrorCode::kIncompatible, "instance is not a metric; set allow_non_metric = true");
    if (sc.algorithm == Algorithm::kSplitMatch && m.tree() == nullptr)
      fail(ErrorCode::kIncompatible, "split-match requires a tree or line metric");
    if (sc.algorithm == Algorithm::kFairBiasOnFrt && !m.is_metric())
      fail(ErrorCode::kIncompatible, "fair-bias-on-frt requires a metric");
    inst.metric = std::make_shared<const Metric>(std::move(m));
  }

  const int n = max_weight ? inst.weights->size() : inst.metric->size();
  if (sc.distribution == "uniform") {
    inst.distribution = std::make_shared<const RequestDistribution>(RequestDistribution::uniform(n));
  } else if (sc.distribution == "geometric") {
    inst.distribution = std::make_shared<const RequestDistribution>(geometric_distribution(n));
  } else if (starts_with(sc.distribution, "file:")) {
    inst.distribution =
        std::make_shared<const RequestDistribution>(load_distribution(sc.distribution.substr(5), n));
  } else {
    fail(ErrorCode::kParse, "unknown distribution '" + sc.distribution + "'");
  }
  if (!max_weight && !inst.distribution->is_uniform()) {
    if (!inst.metric->is_metric())
      fail(ErrorCode::kIncompatible, "non-uniform distributions need a metric");
    inst.plan = solve_transshipment(*inst.distribution, *inst.metric);
  }
  return inst;
}

TrialReport run_trials(const Scenario& sc) { return run_trials(sc, build_instance(sc)); }

TrialReport run_trials(const Scenario& sc, const Instance& inst) {
  const bool max_weight = sc.algorithm == Algorithm::kMaxWeight;
  const int n = max_weight ? inst.weights->size() : inst.metric->size();

  std::unique_ptr<OnlineMatcher> fixed;
  switch (sc.algorithm) {
    case Algorithm::kFairBias:
      fixed = std::make_unique<FairBiasMatcher>(inst.metric,
                                                FairBiasOptions{sc.allow_non_metric});
      break;
    case Algorithm::kSplitMatch:
      fixed = std::make_unique<SplitMatchMatcher>(*inst.metric->tree());
      break;
    case Algorithm::kFairBiasOnFrt:
      if (!sc.frt_per_trial) {
        Rng frt_rng(sc.metric_seed.value_or(sc.seed) ^ kBootstrapSalt);
        auto tree = std::make_shared<const WeightedTree>(frt_embed(*inst.metric, frt_rng));
        fixed = std::make_unique<FairBiasMatcher>(
            std::make_shared<const Metric>(Metric::from_tree(tree)));
      }
      break;
    case Algorithm::kMaxWeight:
      break;
  }

  TrialReport report;
  report.records.reserve(sc.trials);
  for (int t = 0; t < sc.trials; ++t) {
    const auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.trial = t;
    rec.seed = sc.seed + static_cast<std::uint64_t>(t);
    rec.steps = n;
    Rng rng(rec.seed);

    std::vector<PointId> stream;
    if (sc.identity_stream) {
      for (int i = 0; i < n; ++i) stream.push_back(i);
    } else {
      stream = inst.distribution->sample_stream(n, rng);
    }
    const auto requests = RequestMultiset::from_stream(n, stream);

    if (max_weight) {
      auto result = run_episode_max_weight(inst.weights, *inst.distribution, stream, rng);
      rec.alg_cost = result.total_cost;
      rec.step_costs = std::move(result.step_costs);
      rec.opt_cost = opt_max_weight(*inst.weights, requests);
    } else {
      std::unique_ptr<OnlineMatcher> sampled;
      OnlineMatcher* matcher = fixed.get();
      if (!matcher) {
        auto tree = std::make_shared<const WeightedTree>(frt_embed(*inst.metric, rng));
        sampled = std::make_unique<FairBiasMatcher>(
            std::make_shared<const Metric>(Metric::from_tree(tree)));
        matcher = sampled.get();
      }
      const CouplingPlan* plan = inst.plan ? &*inst.plan : nullptr;
      auto wrapped = run_wrapped(*matcher, *inst.metric, plan, stream, rng);
      rec.alg_cost = wrapped.result.total_cost;
      rec.reloc_cost = wrapped.relocation_cost;
      rec.step_costs = std::move(wrapped.result.step_costs);
      rec.opt_cost = opt_cost(*inst.metric, requests);
    }
    if (sc.record_timing)
      rec.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    report.records.push_back(std::move(rec));
  }
  report.summary = summarize(report.records, max_weight, sc.seed);

  if (!sc.output.empty()) {
    std::ofstream out(sc.output);
    if (!out) fail(ErrorCode::kIo, "cannot write " + sc.output);
    write_csv(out, report.records);
    if (!out) fail(ErrorCode::kIo, "write to " + sc.output + " failed");
  }
  return report;
}

Summary summarize(const std::vector<TrialRecord>& records, bool maximize, std::uint64_t seed) {
  Summary s;
  s.trials = static_cast<int>(records.size());
  if (records.empty()) return s;
  auto ratio_of = [&s](double alg, double opt, bool flag) {
    if (opt == 0) {
      if (alg == 0) {
        if (flag) s.zero_over_zero = true;
        return 1.0;
      }
      return std::numeric_limits<double>::infinity();
    }
    return alg / opt;
  };

  double sum_alg = 0, sum_opt = 0;
  for (const auto& r : records) {
    sum_alg += static_cast<double>(r.alg_cost);
    sum_opt += static_cast<double>(r.opt_cost);
    if (maximize ? r.alg_cost > r.opt_cost : r.alg_cost < r.opt_cost) ++s.order_violations;
  }
  s.mean_alg = sum_alg / s.trials;
  s.mean_opt = sum_opt / s.trials;
  s.ratio = ratio_of(s.mean_alg, s.mean_opt, true);

  constexpr int kResamples = 1000;
  Rng rng(seed ^ kBootstrapSalt);
  std::vector<double> ratios;
  ratios.reserve(kResamples);
  const auto m = static_cast<std::uint64_t>(records.size());
  for (int b = 0; b < kResamples; ++b) {
    double a = 0, o = 0;
    for (std::uint64_t i = 0; i < m; ++i) {
      const auto& r = records[uniform_below(rng, m)];
      a += static_cast<double>(r.alg_cost);
      o += static_cast<double>(r.opt_cost);
    }
    ratios.push_back(ratio_of(a, o, false));
  }
  std::sort(ratios.begin(), ratios.end());
  s.ci_low = ratios[static_cast<std::size_t>(0.025 * (kResamples - 1))];
  s.ci_high = ratios[static_cast<std::size_t>(std::ceil(0.975 * (kResamples - 1)))];
  return s;
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "trial,seed,alg_cost,opt_cost,reloc_cost,steps,millis\n";
  for (const auto& r : records)
    out << r.trial << ',' << r.seed << ',' << r.alg_cost << ',' << r.opt_cost << ','
        << r.reloc_cost << ',' << r.steps << ',' << r.millis << '\n';
}

std::string format_summary(const Scenario& sc, const Summary& s) {
  std::ostringstream out;
  out << std::setprecision(6);
  out << "algorithm " << algorithm_tag(sc.algorithm) << "\n"
      << "trials " << s.trials << "\n"
      << "mean_alg " << s.mean_alg << "\n"
      << "mean_opt " << s.mean_opt << "\n"
      << "ratio " << s.ratio << (s.zero_over_zero ? " (0/0)" : "") << "\n"
      << "ci95 " << s.ci_low << ' ' << s.ci_high << "\n";
  if (s.order_violations) out << "order_violations " << s.order_violations << "\n";
  return out.str();
}

Scenario gen_nonmetric_scenario(int n) {
  require(n >= 4 && n % 2 == 0, "the non-metric scenario needs an even n >= 4");
  Scenario sc;
  sc.metric = "nonmetric";
  sc.n = n;
  sc.algorithm = Algorithm::kFairBias;
  sc.allow_non_metric = true;
  return sc;
}

Summary run_frt_variant(Scenario sc) {
  sc.algorithm = Algorithm::kFairBiasOnFrt;
  return run_trials(sc).summary;
}

}  // namespace fairbias
