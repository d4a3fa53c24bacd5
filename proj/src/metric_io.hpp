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

// Text formats.
//
// Metric file: header lines "key value..." followed by data lines; '#'
// starts a comment.
//   kind matrix|costs|line|tree   (costs = unchecked, possibly non-metric)
//   n <points>
//   scale <fixed-point scale>     (optional, default 1)
//   spacing <length>              (line)
//   nodes <count>                 (tree)
//   points <node of point 0> ...  (tree, optional: defaults to nodes 0..n-1)
// Data lines are matrix rows for matrix/costs and "u v length" edges for
// tree.
//
// Distribution file: "point_id weight" lines; absent points get weight 0.
// Request file: whitespace-separated point ids.

#ifndef FAIRBIAS_METRIC_IO_HPP_
#define FAIRBIAS_METRIC_IO_HPP_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "distribution.hpp"
#include "metric.hpp"

namespace fairbias {

Metric parse_metric(std::istream& in);
Metric load_metric(const std::string& path);
void write_metric(std::ostream& out, const Metric& metric);
void write_tree(std::ostream& out, const WeightedTree& tree);

RequestDistribution parse_distribution(std::istream& in, int n);
RequestDistribution load_distribution(const std::string& path, int n);

std::vector<PointId> parse_requests(std::istream& in);
std::vector<PointId> load_requests(const std::string& path);

}  // namespace fairbias

#endif  // FAIRBIAS_METRIC_IO_HPP_
