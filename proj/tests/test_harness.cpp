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
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "metric_io.hpp"
#include "scenario.hpp"

using namespace fairbias;

namespace {

Scenario parse(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

std::string csv_of(const TrialReport& r) {
  std::ostringstream out;
  write_csv(out, r.records);
  return out.str();
}

}  // namespace

TEST_CASE("scenario parsing") {
  auto sc = parse("# comment\nmetric = line\nn = 12\nalgorithm = split-match\n"
                  "trials=7\nseed = 99\nstream = identity\nfrt = once\n");
  CHECK(sc.metric == "line");
  CHECK(sc.n == 12);
  CHECK(sc.algorithm == Algorithm::kSplitMatch);
  CHECK(sc.trials == 7);
  CHECK(sc.seed == 99);
  CHECK(sc.identity_stream);
  CHECK_FALSE(sc.frt_per_trial);

  CHECK(code_of([] { parse("n = twelve\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse("colour = red\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse("metric line\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse("algorithm = greedy\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse("record_timing = maybe\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse("trials = 0\n"); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { load_scenario("/nonexistent/x.scenario"); }) == ErrorCode::kIo);

  for (auto a : {Algorithm::kFairBias, Algorithm::kSplitMatch, Algorithm::kFairBiasOnFrt,
                 Algorithm::kMaxWeight})
    CHECK(parse_algorithm(std::string(algorithm_tag(a))) == a);
}

TEST_CASE("identity stream reports 0/0 as ratio 1") {
  auto sc = parse("metric = line\nn = 6\nstream = identity\ntrials = 5\nseed = 11\n");
  auto r = run_trials(sc);
  CHECK(r.summary.trials == 5);
  CHECK(r.summary.mean_alg == 0.0);
  CHECK(r.summary.ratio == 1.0);
  CHECK(r.summary.zero_over_zero);
  CHECK(format_summary(sc, r.summary).find("ratio 1 (0/0)") != std::string::npos);
}

TEST_CASE("trials are reproducible") {
  auto sc = parse("metric = tree-random\nn = 10\ntrials = 20\nseed = 5\n");
  auto a = run_trials(sc);
  auto b = run_trials(sc);
  CHECK(csv_of(a) == csv_of(b));
  CHECK(csv_of(a).rfind("trial,seed,alg_cost,opt_cost,reloc_cost,steps,millis\n", 0) == 0);
  for (const auto& rec : a.records) {
    CHECK(rec.seed == 5 + static_cast<std::uint64_t>(rec.trial));
    CHECK(rec.steps == 10);
    CHECK(rec.millis == 0);
    CHECK(rec.alg_cost >= rec.opt_cost);
  }
  CHECK(a.summary.order_violations == 0);
  CHECK(a.summary.ci_low <= a.summary.ratio);
  CHECK(a.summary.ratio <= a.summary.ci_high);

  sc.seed = 6;
  CHECK(csv_of(run_trials(sc)) != csv_of(a));
}

TEST_CASE("summary") {
  std::vector<TrialRecord> recs(4);
  for (int i = 0; i < 4; ++i) {
    recs[i].alg_cost = 2 * (i + 1);
    recs[i].opt_cost = i + 1;
  }
  auto s = summarize(recs, false, 1);
  CHECK(s.ratio == doctest::Approx(2.0));
  CHECK(s.ci_low == doctest::Approx(2.0));
  CHECK(s.ci_high == doctest::Approx(2.0));
  CHECK_FALSE(s.zero_over_zero);

  std::vector<TrialRecord> zeros(3);
  auto z = summarize(zeros, false, 1);
  CHECK(z.ratio == 1.0);
  CHECK(z.zero_over_zero);

  recs[0].alg_cost = 0;
  CHECK(summarize(recs, false, 1).order_violations == 1);
  CHECK(summarize(recs, true, 1).order_violations == 3);
}

TEST_CASE("tree scenario stays within 4") {
  auto sc = parse("metric = tree-random\nn = 16\ntrials = 300\nseed = 1\n");
  auto r = run_trials(sc);
  MESSAGE("tree n=16 ratio " << r.summary.ratio);
  CHECK(r.summary.ratio <= 4.0);
  CHECK(r.summary.ratio >= 1.0);
}

TEST_CASE("non-metric construction") {
  auto m = nonmetric_instance(4);
  CHECK_FALSE(m.is_metric());
  CHECK(m.dist(0, 2) == 1);
  CHECK(m.dist(1, 2) == 1);
  CHECK(m.dist(2, 2) == 4);
  CHECK(m.dist(3, 2) == 4);
  CHECK(m.dist(0, 3) == 4);
  CHECK(m.dist(1, 3) == 4);
  CHECK(m.dist(2, 3) == 1);
  CHECK(m.dist(3, 3) == 1);
  for (int s = 0; s < 4; ++s)
    for (int r = 0; r < 2; ++r) CHECK(m.dist(s, r) == 1);
  CHECK_FALSE(validate_metric(m).ok());
  CHECK_THROWS_AS(nonmetric_instance(5), Error);
  CHECK_THROWS_AS(gen_nonmetric_scenario(7), Error);

  auto sc = gen_nonmetric_scenario(6);
  sc.trials = 200;
  auto six = run_trials(sc).summary;
  sc = gen_nonmetric_scenario(10);
  sc.trials = 200;
  auto ten = run_trials(sc).summary;
  MESSAGE("non-metric ratios: n=6 " << six.ratio << ", n=10 " << ten.ratio);
  CHECK(std::isfinite(six.ratio));

  auto refused = gen_nonmetric_scenario(6);
  refused.allow_non_metric = false;
  CHECK(code_of([&] { build_instance(refused); }) == ErrorCode::kIncompatible);
}

TEST_CASE("incompatible combinations") {
  auto sc = parse("metric = uniform\nn = 6\nalgorithm = split-match\n");
  CHECK(code_of([&] { build_instance(sc); }) == ErrorCode::kIncompatible);
  auto mw = parse("metric = line\nn = 6\nalgorithm = max-weight\n");
  CHECK(code_of([&] { build_instance(mw); }) == ErrorCode::kIncompatible);
  auto rw = parse("metric = random-weights\nn = 6\n");
  CHECK(code_of([&] { build_instance(rw); }) == ErrorCode::kIncompatible);
  auto bad = parse("metric = moon\nn = 6\n");
  CHECK(code_of([&] { build_instance(bad); }) == ErrorCode::kParse);
}

TEST_CASE("other algorithms run") {
  auto split = run_trials(parse("metric = tree-random\nn = 12\nalgorithm = split-match\ntrials = 50\n"));
  CHECK(split.summary.order_violations == 0);
  CHECK(std::isfinite(split.summary.ratio));

  auto mw = run_trials(parse("metric = random-weights\nn = 5\nalgorithm = max-weight\ntrials = 200\n"));
  CHECK(mw.summary.order_violations == 0);
  CHECK(mw.summary.ratio <= 1.0);
  CHECK(mw.summary.ratio >= 0.5);

  auto geo = run_trials(parse("metric = tree-random\nn = 8\ndistribution = geometric\ntrials = 200\n"));
  CHECK(geo.summary.order_violations == 0);
  CHECK(geo.summary.ratio <= 9.0);
  for (const auto& rec : geo.records) CHECK(rec.reloc_cost >= 0);
}

TEST_CASE("embed-then-run variant") {
  auto uni = parse("metric = uniform\nn = 16\ntrials = 100\n");
  auto s = run_frt_variant(uni);
  CHECK(std::isfinite(s.ratio));
  CHECK(s.ratio >= 1.0);

  auto one = parse("metric = uniform\nn = 1\ntrials = 3\n");
  auto s1 = run_frt_variant(one);
  CHECK(s1.mean_alg == 0.0);

  auto tree = parse("metric = tree-random\nn = 12\ntrials = 300\nseed = 3\n");
  auto plain = run_trials(tree).summary;
  auto frt = run_frt_variant(tree);
  MESSAGE("tree n=12: plain " << plain.ratio << ", via FRT " << frt.ratio);
  CHECK(std::isfinite(frt.ratio));
  CHECK(frt.ratio >= 1.0);
}

TEST_CASE("metric and request I/O") {
  Rng rng(1);
  std::vector<Metric> metrics;
  metrics.push_back(build_line_metric(5, 3));
  metrics.push_back(Metric::from_tree(random_tree(6, rng)));
  metrics.push_back(random_grid_metric(5, 4, rng));
  metrics.push_back(nonmetric_instance(4));
  for (const Metric& m : metrics) {
    std::ostringstream out;
    write_metric(out, m);
    std::istringstream in(out.str());
    Metric back = parse_metric(in);
    REQUIRE(back.size() == m.size());
    CHECK(back.is_metric() == m.is_metric());
    CHECK(std::vector<Cost>(back.matrix().begin(), back.matrix().end()) ==
          std::vector<Cost>(m.matrix().begin(), m.matrix().end()));
  }

  std::istringstream bad_matrix("kind matrix\nn 3\n0 1 5\n1 0 1\n5 1 0\n");
  CHECK(code_of([&] { parse_metric(bad_matrix); }) == ErrorCode::kNotMetric);
  std::istringstream short_rows("kind matrix\nn 2\n0 1\n");
  CHECK(code_of([&] { parse_metric(short_rows); }) == ErrorCode::kParse);
  std::istringstream unknown("kind blob\nn 2\n");
  CHECK(code_of([&] { parse_metric(unknown); }) == ErrorCode::kParse);
  CHECK(code_of([] { load_metric("/nonexistent/m"); }) == ErrorCode::kIo);

  std::istringstream dist("# weights\n0 3\n2 1\n");
  auto d = parse_distribution(dist, 3);
  CHECK(d.weights() == std::vector<std::int64_t>{3, 0, 1});
  std::istringstream bad_dist("5 1\n");
  CHECK(code_of([&] { parse_distribution(bad_dist, 3); }) == ErrorCode::kParse);

  std::istringstream req("1 1\n0\n");
  CHECK(parse_requests(req) == std::vector<PointId>{1, 1, 0});
  std::istringstream bad_req("1 x\n");
  CHECK(code_of([&] { parse_requests(bad_req); }) == ErrorCode::kParse);
}
