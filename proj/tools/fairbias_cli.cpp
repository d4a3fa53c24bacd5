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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairbias/fairbias.h"

namespace {

constexpr int kVerifyFailed = 1;
constexpr int kError = 2;

struct MetricHandle {
  fb_metric* p = nullptr;
  ~MetricHandle() { fb_metric_free(p); }
};
struct ReportHandle {
  fb_report* p = nullptr;
  ~ReportHandle() { fb_report_free(p); }
};

int report_error(fb_status status) {
  std::cerr << "error (" << fb_status_name(status) << "): " << fb_last_error() << "\n";
  return kError;
}

int finish_report(fb_status status, ReportHandle& report) {
  if (status != FB_OK) return report_error(status);
  std::cout << fb_report_text(report.p);
  const bool ok = fb_report_passed(report.p);
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : kVerifyFailed;
}

fb_status load_optional_metric(const std::string& path, MetricHandle& m) {
  if (path.empty()) return FB_OK;
  return fb_metric_load(path.c_str(), &m.p);
}

std::vector<int> read_requests(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<int> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    std::istringstream ls(hash == std::string::npos ? line : line.substr(0, hash));
    int v;
    while (ls >> v) out.push_back(v);
    if (!ls.eof()) throw std::runtime_error("bad request id in " + path);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online stochastic metric matching: simulation and verification"};
  app.set_version_flag("--version", std::string(fb_version()));
  app.require_subcommand(1);
  int exit_code = 0;

  std::string scenario_path;
  auto* simulate = app.add_subcommand("simulate", "Run the trials of a scenario file");
  simulate->add_option("scenario", scenario_path, "Scenario file")->required();

  auto* verify = app.add_subcommand("verify", "Check a structural property");
  verify->require_subcommand(1);
  std::string metric_path;
  int n = 4;
  long episodes = 100000;
  long trials = 100000;
  int instances = 100;
  std::uint64_t seed = 1;

  auto* structure = verify->add_subcommand("structure", "Free sets are uniform k-subsets");
  structure->add_option("--metric", metric_path, "Metric file (default: random tree)");
  structure->add_option("--n", n, "Points of the random tree")->check(CLI::Range(1, 16));
  structure->add_option("--episodes", episodes, "Episodes")->check(CLI::PositiveNumber);
  structure->add_option("--seed", seed, "Base seed");

  auto* replacement = verify->add_subcommand("replacement", "Subsets versus i.i.d. draws, exactly");
  replacement->add_option("--metric", metric_path, "Metric file (default: unit line)");
  replacement->add_option("--n", n, "Points of the default line")->check(CLI::Range(1, 6));

  auto* decomposition = verify->add_subcommand("decomposition", "E[ALG] against sum_k E[M(S_k)]");
  decomposition->add_option("--metric", metric_path, "Metric file (default: random tree)");
  decomposition->add_option("--n", n, "Points of the random tree")->check(CLI::Range(1, 64));
  decomposition->add_option("--trials", trials, "Episodes")->check(CLI::PositiveNumber);
  decomposition->add_option("--seed", seed, "Base seed");

  auto* scaling = verify->add_subcommand("scaling", "M(T) = (n/|T| - 1) M(S \\ T)");
  scaling->add_option("--instances", instances, "Random instances")->check(CLI::PositiveNumber);
  scaling->add_option("--seed", seed, "Seed");

  auto* match_to_self = verify->add_subcommand("match-to-self", "Canonicalization");
  match_to_self->add_option("--instances", instances, "Random instances")->check(CLI::PositiveNumber);
  match_to_self->add_option("--seed", seed, "Seed");

  std::string requests_path;
  auto* opt = app.add_subcommand("opt", "Offline optimum of a request list");
  opt->add_option("metric", metric_path, "Metric file")->required();
  opt->add_option("requests", requests_path, "Request list file")->required();

  auto* embed = app.add_subcommand("embed", "Sample an FRT tree and print it");
  embed->add_option("metric", metric_path, "Metric file")->required();
  embed->add_option("--seed", seed, "Seed");

  int k = 1;
  int bb_trials = 1;
  auto* ballsbins = app.add_subcommand("ballsbins", "Top-k load of n balls in n bins");
  ballsbins->add_option("n", n, "Bins")->required()->check(CLI::PositiveNumber);
  ballsbins->add_option("k", k, "Top k")->required();
  ballsbins->add_option("trials", bb_trials, "Trials")->required()->check(CLI::PositiveNumber);
  ballsbins->add_option("seed", seed, "Seed")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      fb_scenario* sc = nullptr;
      fb_status st = fb_scenario_load(scenario_path.c_str(), &sc);
      if (st != FB_OK) return report_error(st);
      std::unique_ptr<fb_scenario, decltype(&fb_scenario_free)> guard(sc, fb_scenario_free);
      fb_summary s{};
      st = fb_simulate(sc, &s);
      if (st != FB_OK) return report_error(st);
      std::printf("trials %d\nmean_alg %.6g\nmean_opt %.6g\nratio %.6g%s\nci95 %.6g %.6g\n",
                  s.trials, s.mean_alg, s.mean_opt, s.ratio, s.zero_over_zero ? " (0/0)" : "",
                  s.ci_low, s.ci_high);
      if (s.order_violations) std::printf("order_violations %d\n", s.order_violations);
    } else if (*verify) {
      MetricHandle m;
      ReportHandle r;
      if (*structure) {
        if (fb_status st = load_optional_metric(metric_path, m); st != FB_OK) return report_error(st);
        exit_code = finish_report(fb_verify_structure(m.p, n, episodes, seed, &r.p), r);
      } else if (*replacement) {
        fb_status st = metric_path.empty() ? fb_metric_line(n, 1, &m.p)
                                           : fb_metric_load(metric_path.c_str(), &m.p);
        if (st != FB_OK) return report_error(st);
        exit_code = finish_report(fb_verify_replacement(m.p, &r.p), r);
      } else if (*decomposition) {
        if (fb_status st = load_optional_metric(metric_path, m); st != FB_OK) return report_error(st);
        exit_code = finish_report(fb_verify_decomposition(m.p, n, trials, seed, &r.p), r);
      } else if (*scaling) {
        exit_code = finish_report(fb_verify_scaling(instances, seed, &r.p), r);
      } else if (*match_to_self) {
        exit_code = finish_report(fb_verify_match_to_self(instances, seed, &r.p), r);
      }
    } else if (*opt) {
      MetricHandle m;
      if (fb_status st = fb_metric_load(metric_path.c_str(), &m.p); st != FB_OK) return report_error(st);
      const auto reqs = read_requests(requests_path);
      int64_t value = 0;
      if (fb_status st = fb_opt(m.p, reqs.data(), reqs.size(), &value); st != FB_OK)
        return report_error(st);
      std::cout << value << "\n";
    } else if (*embed) {
      MetricHandle m;
      if (fb_status st = fb_metric_load(metric_path.c_str(), &m.p); st != FB_OK) return report_error(st);
      fb_tree* tree = nullptr;
      if (fb_status st = fb_frt_embed(m.p, seed, &tree); st != FB_OK) return report_error(st);
      std::unique_ptr<fb_tree, decltype(&fb_tree_free)> guard(tree, fb_tree_free);
      char* text = nullptr;
      if (fb_status st = fb_tree_write(tree, &text); st != FB_OK) return report_error(st);
      std::cout << text;
      fb_string_free(text);
    } else if (*ballsbins) {
      double mean = 0, se = 0;
      if (fb_status st = fb_ballsbins_estimate(n, k, bb_trials, seed, &mean, &se); st != FB_OK)
        return report_error(st);
      std::printf("mean %.6f\nstderr %.6f\n", mean, se);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return exit_code;
}
