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

/* C interface to the fairbias library. Objects are opaque handles owned by
 * the caller and released with the matching *_free function. Every call that
 * can fail returns an fb_status; on failure fb_last_error() describes the
 * problem for the calling thread. */

#ifndef FAIRBIAS_FAIRBIAS_H_
#define FAIRBIAS_FAIRBIAS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FB_API __declspec(dllexport)
#else
#define FB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fb_status {
  FB_OK = 0,
  FB_INVALID_ARGUMENT = 1,
  FB_NOT_METRIC = 2,
  FB_PARSE_ERROR = 3,
  FB_IO_ERROR = 4,
  FB_INCOMPATIBLE = 5,
  FB_INTERNAL = 6
} fb_status;

typedef struct fb_metric fb_metric;
typedef struct fb_tree fb_tree;
typedef struct fb_scenario fb_scenario;
typedef struct fb_report fb_report;

typedef struct fb_summary {
  int trials;
  double mean_alg;
  double mean_opt;
  double ratio;
  double ci_low;
  double ci_high;
  int zero_over_zero;
  int order_violations;
} fb_summary;

FB_API const char* fb_version(void);
FB_API const char* fb_last_error(void);
FB_API const char* fb_status_name(fb_status status);

/* Metrics */
FB_API fb_status fb_metric_load(const char* path, fb_metric** out);
FB_API fb_status fb_metric_parse(const char* text, fb_metric** out);
FB_API fb_status fb_metric_line(int n, int64_t spacing, fb_metric** out);
FB_API void fb_metric_free(fb_metric* metric);
FB_API int fb_metric_size(const fb_metric* metric);
FB_API int fb_metric_is_metric(const fb_metric* metric);
FB_API fb_status fb_metric_distance(const fb_metric* metric, int server, int location,
                                    int64_t* out);

/* Offline optimum for requests[0..count), count must equal the metric size. */
FB_API fb_status fb_opt(const fb_metric* metric, const int* requests, size_t count, int64_t* out);

/* FRT tree embedding */
FB_API fb_status fb_frt_embed(const fb_metric* metric, uint64_t seed, fb_tree** out);
FB_API void fb_tree_free(fb_tree* tree);
FB_API int fb_tree_node_count(const fb_tree* tree);
FB_API int fb_tree_point_count(const fb_tree* tree);
FB_API fb_status fb_tree_distance(const fb_tree* tree, int u, int v, int64_t* out);
/* Tree in the metric file format; release with fb_string_free. */
FB_API fb_status fb_tree_write(const fb_tree* tree, char** text);
FB_API void fb_string_free(char* text);

/* Balls into bins: mean and standard error of the top-k load. */
FB_API fb_status fb_ballsbins_estimate(int n, int k, int trials, uint64_t seed, double* mean,
                                       double* stderr_out);

/* Scenarios */
FB_API fb_status fb_scenario_load(const char* path, fb_scenario** out);
FB_API fb_status fb_scenario_parse(const char* text, fb_scenario** out);
FB_API void fb_scenario_free(fb_scenario* scenario);
FB_API fb_status fb_simulate(const fb_scenario* scenario, fb_summary* out);

/* Verifiers. metric may be NULL where noted to use a random tree. */
FB_API fb_status fb_verify_structure(const fb_metric* metric_or_null, int n, long episodes,
                                     uint64_t seed, fb_report** out);
FB_API fb_status fb_verify_replacement(const fb_metric* metric, fb_report** out);
FB_API fb_status fb_verify_decomposition(const fb_metric* metric_or_null, int n, long trials,
                                         uint64_t seed, fb_report** out);
FB_API fb_status fb_verify_scaling(int instances, uint64_t seed, fb_report** out);
FB_API fb_status fb_verify_match_to_self(int instances, uint64_t seed, fb_report** out);
FB_API int fb_report_passed(const fb_report* report);
FB_API const char* fb_report_text(const fb_report* report);
FB_API void fb_report_free(fb_report* report);

#ifdef __cplusplus
}
#endif

#endif /* FAIRBIAS_FAIRBIAS_H_ */
