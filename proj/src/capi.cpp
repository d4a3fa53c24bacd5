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

#include "fairbias/fairbias.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>
#include <string>

#include "balls_bins.hpp"
#include "frt.hpp"
#include "generators.hpp"
#include "metric_io.hpp"
#include "offline_opt.hpp"
#include "scenario.hpp"
#include "verify.hpp"

struct fb_metric {
  std::shared_ptr<const fairbias::Metric> metric;
};
struct fb_tree {
  fairbias::WeightedTree tree;
};
struct fb_scenario {
  fairbias::Scenario scenario;
};
struct fb_report {
  bool passed;
  std::string text;
};

namespace {

thread_local std::string last_error;

fb_status to_status(fairbias::ErrorCode code) {
  using fairbias::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return FB_INVALID_ARGUMENT;
    case ErrorCode::kNotMetric: return FB_NOT_METRIC;
    case ErrorCode::kParse: return FB_PARSE_ERROR;
    case ErrorCode::kIo: return FB_IO_ERROR;
    case ErrorCode::kIncompatible: return FB_INCOMPATIBLE;
    case ErrorCode::kInternal: return FB_INTERNAL;
  }
  return FB_INTERNAL;
}

template <typename F>
fb_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return FB_OK;
  } catch (const fairbias::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FB_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FB_INTERNAL;
  }
}

fb_status null_argument(const char* name) {
  last_error = std::string("null argument: ") + name;
  return FB_INVALID_ARGUMENT;
}

template <typename Report>
fb_report* make_report(const Report& r) {
  return new fb_report{r.passed(), r.text()};
}

fairbias::Metric metric_or_tree(const fb_metric* metric, int n, std::uint64_t seed) {
  if (metric) return *metric->metric;
  fairbias::Rng gen(seed);
  return fairbias::Metric::from_tree(fairbias::random_tree(n, gen));
}

}  // namespace

extern "C" {

const char* fb_version(void) { return "1.0.0"; }

const char* fb_last_error(void) { return last_error.c_str(); }

const char* fb_status_name(fb_status status) {
  switch (status) {
    case FB_OK: return "ok";
    case FB_INVALID_ARGUMENT: return "invalid argument";
    case FB_NOT_METRIC: return "not a metric";
    case FB_PARSE_ERROR: return "parse error";
    case FB_IO_ERROR: return "i/o error";
    case FB_INCOMPATIBLE: return "incompatible";
    case FB_INTERNAL: return "internal error";
  }
  return "unknown";
}

fb_status fb_metric_load(const char* path, fb_metric** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new fb_metric{std::make_shared<const fairbias::Metric>(fairbias::load_metric(path))};
  });
}

fb_status fb_metric_parse(const char* text, fb_metric** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  return guarded([&] {
    std::istringstream in(text);
    *out = new fb_metric{std::make_shared<const fairbias::Metric>(fairbias::parse_metric(in))};
  });
}

fb_status fb_metric_line(int n, int64_t spacing, fb_metric** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new fb_metric{
        std::make_shared<const fairbias::Metric>(fairbias::build_line_metric(n, spacing))};
  });
}

void fb_metric_free(fb_metric* metric) { delete metric; }

int fb_metric_size(const fb_metric* metric) { return metric ? metric->metric->size() : 0; }

int fb_metric_is_metric(const fb_metric* metric) {
  return metric && metric->metric->is_metric() ? 1 : 0;
}

fb_status fb_metric_distance(const fb_metric* metric, int server, int location, int64_t* out) {
  if (!metric) return null_argument("metric");
  if (!out) return null_argument("out");
  return guarded([&] {
    const int n = metric->metric->size();
    fairbias::require(server >= 0 && server < n && location >= 0 && location < n,
                      "point id out of range");
    *out = metric->metric->dist(server, location);
  });
}

fb_status fb_opt(const fb_metric* metric, const int* requests, size_t count, int64_t* out) {
  if (!metric) return null_argument("metric");
  if (!requests && count) return null_argument("requests");
  if (!out) return null_argument("out");
  return guarded([&] {
    std::vector<fairbias::PointId> stream(requests, requests + count);
    const int n = metric->metric->size();
    fairbias::require(static_cast<int>(count) == n, "need exactly n requests");
    *out = fairbias::opt_cost(*metric->metric, fairbias::RequestMultiset::from_stream(n, stream));
  });
}

fb_status fb_frt_embed(const fb_metric* metric, uint64_t seed, fb_tree** out) {
  if (!metric) return null_argument("metric");
  if (!out) return null_argument("out");
  return guarded([&] {
    fairbias::Rng rng(seed);
    *out = new fb_tree{fairbias::frt_embed(*metric->metric, rng)};
  });
}

void fb_tree_free(fb_tree* tree) { delete tree; }

int fb_tree_node_count(const fb_tree* tree) { return tree ? tree->tree.node_count() : 0; }

int fb_tree_point_count(const fb_tree* tree) { return tree ? tree->tree.point_count() : 0; }

fb_status fb_tree_distance(const fb_tree* tree, int u, int v, int64_t* out) {
  if (!tree) return null_argument("tree");
  if (!out) return null_argument("out");
  return guarded([&] { *out = fairbias::tree_distance(tree->tree, u, v); });
}

fb_status fb_tree_write(const fb_tree* tree, char** text) {
  if (!tree) return null_argument("tree");
  if (!text) return null_argument("text");
  return guarded([&] {
    std::ostringstream out;
    fairbias::write_tree(out, tree->tree);
    const std::string s = out.str();
    char* buffer = static_cast<char*>(std::malloc(s.size() + 1));
    if (!buffer) throw std::bad_alloc();
    std::memcpy(buffer, s.c_str(), s.size() + 1);
    *text = buffer;
  });
}

void fb_string_free(char* text) { std::free(text); }

fb_status fb_ballsbins_estimate(int n, int k, int trials, uint64_t seed, double* mean,
                                double* stderr_out) {
  if (!mean) return null_argument("mean");
  if (!stderr_out) return null_argument("stderr_out");
  return guarded([&] {
    fairbias::Rng rng(seed);
    const auto e = fairbias::estimate_Nk(n, k, trials, rng);
    *mean = e.mean;
    *stderr_out = e.stderr_;
  });
}

fb_status fb_scenario_load(const char* path, fb_scenario** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new fb_scenario{fairbias::load_scenario(path)}; });
}

fb_status fb_scenario_parse(const char* text, fb_scenario** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  return guarded([&] {
    std::istringstream in(text);
    *out = new fb_scenario{fairbias::parse_scenario(in)};
  });
}

void fb_scenario_free(fb_scenario* scenario) { delete scenario; }

fb_status fb_simulate(const fb_scenario* scenario, fb_summary* out) {
  if (!scenario) return null_argument("scenario");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto s = fairbias::run_trials(scenario->scenario).summary;
    *out = fb_summary{s.trials,  s.mean_alg, s.mean_opt, s.ratio,
                      s.ci_low,  s.ci_high,  s.zero_over_zero ? 1 : 0, s.order_violations};
  });
}

fb_status fb_verify_structure(const fb_metric* metric_or_null, int n, long episodes, uint64_t seed,
                              fb_report** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto m = metric_or_tree(metric_or_null, n, seed);
    *out = make_report(fairbias::verify_structure_lemma(m, episodes, seed));
  });
}

fb_status fb_verify_replacement(const fb_metric* metric, fb_report** out) {
  if (!metric) return null_argument("metric");
  if (!out) return null_argument("out");
  return guarded([&] { *out = make_report(fairbias::verify_replacement(*metric->metric)); });
}

fb_status fb_verify_decomposition(const fb_metric* metric_or_null, int n, long trials,
                                  uint64_t seed, fb_report** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto m = metric_or_tree(metric_or_null, n, seed);
    *out = make_report(fairbias::verify_cost_decomposition(m, trials, seed));
  });
}

fb_status fb_verify_scaling(int instances, uint64_t seed, fb_report** out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = make_report(fairbias::verify_scaling(instances, seed)); });
}

fb_status fb_verify_match_to_self(int instances, uint64_t seed, fb_report** out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = make_report(fairbias::verify_match_to_self(instances, seed)); });
}

int fb_report_passed(const fb_report* report) { return report && report->passed ? 1 : 0; }

const char* fb_report_text(const fb_report* report) { return report ? report->text.c_str() : ""; }

void fb_report_free(fb_report* report) { delete report; }

}  // extern "C"
