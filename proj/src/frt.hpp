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

#ifndef FAIRBIAS_FRT_HPP_
#define FAIRBIAS_FRT_HPP_

#include "metric.hpp"
#include "rng.hpp"

namespace fairbias {

/// Samples a hierarchical-decomposition tree that dominates the metric.
///
/// Draws a random permutation of the points and a radius factor beta,
/// log-uniform in [1, 2). Starting from one cluster holding every point, each
/// level-(i+1) cluster is carved into level-i clusters: a point joins the
/// first point in permutation order within distance beta * 2^(i-1). The edge
/// from a level-i cluster to its parent has length 2^(i+1); level 0 clusters
/// only hold co-located points, which hang off their cluster node by
/// zero-length edges.
///
/// Every pair satisfies tree distance >= metric distance. Throws kNotMetric
/// for instances flagged non-metric.
WeightedTree frt_embed(const Metric& metric, Rng& rng);

}  // namespace fairbias

#endif  // FAIRBIAS_FRT_HPP_
