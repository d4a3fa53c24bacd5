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

#include "verify.hpp"

#include <array>
#include <bit>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <sstream>

#include "b_matching.hpp"
#include "fair_bias.hpp"
#include "frt.hpp"
#include "generators.hpp"

namespace fairbias {
namespace {

struct Moments {
  double sum = 0, sum_sq = 0;
  long count = 0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  double mean() const { return count ? sum / count : 0; }
  double se() const {
    if (count < 2) return 0;
    const double var = std::max(0.0, (sum_sq - sum * mean()) / (count - 1));
    return std::sqrt(var / count);
  }
};

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::int64_t binomial(int n, int k) {
  std::int64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

PointSet from_mask(int n, std::uint32_t mask) {
  PointSet s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1U) s.set(i);
  return s;
}

PointSet random_subset(int n, int k, Rng& rng) {
  std::vector<int> ids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ids[i] = i;
  PointSet s(static_cast<std::size_t>(n));
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - i)));
    std::swap(ids[i], ids[j]);
    s.set(ids[i]);
  }
  return s;
}

/// Small random instance for the exact identities.
Metric random_small_metric(int n, int variant, Rng& rng) {
  switch (variant % 4) {
    case 0: return Metric::from_tree(random_tree(n, rng, 20));
    case 1: return build_line_metric(n, 1 + static_cast<Cost>(uniform_below(rng, 5)));
    case 2: return uniform_metric(n);
    default: return random_grid_metric(n, 6, rng);
  }
}

std::string rational_text(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

bool StructureReport::passed(double alpha) const {
  for (const auto& r : rows)
    if (!(r.p_value > alpha)) return false;
  return true;
}

std::string StructureReport::text() const {
  std::ostringstream out;
  out << "structure n=" << n << " episodes=" << episodes << "\n";
  for (const auto& r : rows)
    out << "  k=" << r.k << " subsets=" << r.categories << " chi2=" << r.statistic
        << " dof=" << r.dof << " p=" << r.p_value << "\n";
  return out.str();
}

StructureReport verify_structure_lemma(const Metric& metric, long episodes, std::uint64_t seed) {
  const int n = metric.size();
  require(n >= 1 && n <= 16, "structure check enumerates subsets; needs n <= 16");
  require(episodes >= 1, "need at least one episode");
  auto shared = std::make_shared<const Metric>(metric);
  const auto uniform = RequestDistribution::uniform(n);
  // counts[mask] for free sets; the size of mask determines k.
  std::vector<long> counts(std::size_t{1} << n, 0);
  for (long e = 0; e < episodes; ++e) {
    Rng rng(seed + static_cast<std::uint64_t>(e));
    OnlineState state = init(shared);
    for (int step = 0; step < n; ++step) {
      fairbias::step(state, uniform.sample(rng), rng);
      std::uint32_t mask = 0;
      for (int i = 0; i < n; ++i)
        if (state.free[i]) mask |= 1U << i;
      ++counts[mask];
    }
  }

  StructureReport report;
  report.n = n;
  report.episodes = episodes;
  for (int k = 1; k < n; ++k) {
    ChiSquareRow row;
    row.k = k;
    row.categories = static_cast<int>(binomial(n, k));
    const double expected = static_cast<double>(episodes) / row.categories;
    for (std::uint32_t mask = 0; mask < counts.size(); ++mask) {
      if (std::popcount(mask) != k) continue;
      const double d = static_cast<double>(counts[mask]) - expected;
      row.statistic += d * d / expected;
    }
    row.dof = row.categories - 1;
    if (row.dof > 0) {
      boost::math::chi_squared dist(row.dof);
      row.p_value = boost::math::cdf(boost::math::complement(dist, row.statistic));
    }
    report.rows.push_back(row);
  }
  return report;
}

StructureReport verify_structure_lemma(int n, long episodes, std::uint64_t seed) {
  Rng gen(seed);
  return verify_structure_lemma(Metric::from_tree(random_tree(n, gen)), episodes, seed);
}

bool ReplacementReport::passed() const {
  for (const auto& r : rows)
    if (!r.holds()) return false;
  return !rows.empty();
}

std::string ReplacementReport::text() const {
  std::ostringstream out;
  out << "replacement\n";
  for (const auto& r : rows)
    out << "  k=" << r.k << " without=" << rational_text(r.without_replacement)
        << " with=" << rational_text(r.with_replacement) << (r.holds() ? "" : "  VIOLATED") << "\n";
  return out.str();
}

ReplacementReport verify_replacement(const Metric& metric) {
  const int n = metric.size();
  require(n >= 1 && n <= 6, "replacement check enumerates multisets; needs n <= 6");
  ReplacementReport report;
  std::vector<std::int64_t> factorial(n + 1, 1);
  for (int i = 1; i <= n; ++i) factorial[i] = factorial[i - 1] * i;

  for (int k = 1; k <= n; ++k) {
    ReplacementRow row;
    row.k = k;
    Rational sum_subsets = 0;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask)
      if (std::popcount(mask) == k) sum_subsets += solve_min_cost(from_mask(n, mask), metric).value();
    row.without_replacement = sum_subsets / binomial(n, k);

    // Multisets of size k, weighted by their multinomial probability.
    std::int64_t n_pow_k = 1;
    for (int i = 0; i < k; ++i) n_pow_k *= n;
    Rational sum_multisets = 0;
    std::vector<int> counts(n, 0);
    auto visit = [&](auto&& self, int i, int left) -> void {
      if (i == n - 1) {
        counts[i] = left;
        std::int64_t ways = factorial[k];
        for (int c : counts) ways /= factorial[c];
        sum_multisets += Rational(ways) * solve_min_cost(multiset_profile(counts), metric).value();
        return;
      }
      for (int c = 0; c <= left; ++c) {
        counts[i] = c;
        self(self, i + 1, left - c);
      }
    };
    visit(visit, 0, k);
    row.with_replacement = sum_multisets / n_pow_k;
    report.rows.push_back(row);
  }
  return report;
}

bool DecompositionReport::passed() const {
  const double se = std::sqrt(alg_se * alg_se + sum_se * sum_se);
  return std::abs(alg_mean - sum_mean) <= 3 * se;
}

std::string DecompositionReport::text() const {
  std::ostringstream out;
  out << "decomposition trials=" << trials << "\n  alg " << alg_mean << " +- " << alg_se
      << "\n  sum_k M(S_k) " << sum_mean << " +- " << sum_se << "\n";
  if (exact_sum) out << "  exact sum_k E[M(S_k)] " << to_double(*exact_sum) << "\n";
  return out.str();
}

DecompositionReport verify_cost_decomposition(const Metric& metric, long trials,
                                              std::uint64_t seed) {
  require(trials >= 1, "need at least one trial");
  const int n = metric.size();
  auto shared = std::make_shared<const Metric>(metric);
  const auto uniform = RequestDistribution::uniform(n);
  Moments alg, sum;
  for (long t = 0; t < trials; ++t) {
    Rng rng(seed + static_cast<std::uint64_t>(t));
    auto stream = uniform.sample_stream(n, rng);
    alg.add(static_cast<double>(run_episode(shared, stream, rng).total_cost));
    double s = 0;
    for (int k = 1; k <= n; ++k) s += to_double(solve_min_cost(random_subset(n, k, rng), metric).value());
    sum.add(s);
  }
  DecompositionReport report;
  report.trials = trials;
  report.alg_mean = alg.mean();
  report.alg_se = alg.se();
  report.sum_mean = sum.mean();
  report.sum_se = sum.se();
  if (n <= 12) {
    Rational exact = 0;
    for (int k = 1; k <= n; ++k) {
      Rational level = 0;
      for (std::uint32_t mask = 0; mask < (1U << n); ++mask)
        if (std::popcount(mask) == k) level += solve_min_cost(from_mask(n, mask), metric).value();
      exact += level / binomial(n, k);
    }
    report.exact_sum = exact;
  }
  return report;
}

std::string IdentityReport::text() const {
  std::ostringstream out;
  out << "instances=" << instances << " failures=" << failures << " nontrivial=" << nontrivial << "\n";
  if (!first_failure.empty()) out << "  first failure: " << first_failure << "\n";
  return out.str();
}

IdentityReport verify_scaling(int instances, std::uint64_t seed, int max_n) {
  require(max_n >= 2, "max_n must be at least 2");
  Rng rng(seed);
  IdentityReport report;
  for (int i = 0; i < instances; ++i) {
    const int n = 2 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_n - 1)));
    const Metric m = random_small_metric(n, i, rng);
    const int k = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n / 2)));
    const PointSet t = random_subset(n, k, rng);
    const auto check = scaling_identity_check(t, m);
    ++report.instances;
    if (check.lhs != Rational(0)) ++report.nontrivial;
    if (!check.holds()) {
      if (report.failures++ == 0)
        report.first_failure = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " lhs=" +
                               rational_text(check.lhs) + " rhs=" + rational_text(check.rhs);
    }
  }
  return report;
}

IdentityReport verify_match_to_self(int instances, std::uint64_t seed, int max_n) {
  require(max_n >= 2, "max_n must be at least 2");
  Rng rng(seed);
  IdentityReport report;
  for (int i = 0; i < instances; ++i) {
    const int n = 2 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_n - 1)));
    // Lines, trees and grids have points between other points, which is
    // what cost-neutral exchanges need.
    const int variant = std::array{0, 1, 3}[i % 3];
    const Metric m = random_small_metric(n, variant, rng);

    DemandProfile profile;
    if (i % 2 == 0) {
      const int k = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
      profile = uniform_profile(random_subset(n, k, rng));
    } else {
      std::vector<int> counts(n, 0);
      const int k = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(2 * n)));
      for (int b = 0; b < k; ++b) ++counts[uniform_below(rng, static_cast<std::uint64_t>(n))];
      profile = multiset_profile(counts);
    }

    FractionalMatching x = solve_min_cost_flow(profile, m);
    const Rational value = x.value();
    std::vector<std::int64_t> u(static_cast<std::size_t>(n) * n, 0);
    auto at = [&](int s, int r) -> std::int64_t& { return u[static_cast<std::size_t>(s) * n + r]; };
    for (const auto& e : x.entries) at(e.server, e.location) += e.units;

    // Move diagonal mass off through i -> j and j' -> i whenever i lies on a
    // shortest j'-j path.
    for (int round = 0; round < 4 * n; ++round) {
      bool moved = false;
      for (int a = 0; a < n && !moved; ++a) {
        if (at(a, a) == 0) continue;
        for (int s = 0; s < n && !moved; ++s) {
          for (int r = 0; r < n && !moved; ++r) {
            if (s == a || r == a || at(s, r) == 0) continue;
            if (m.dist(s, a) + m.dist(a, r) != m.dist(s, r)) continue;
            const std::int64_t cap = std::min(at(a, a), at(s, r));
            const std::int64_t eps = 1 + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(cap)));
            at(a, a) -= eps;
            at(s, r) -= eps;
            at(a, r) += eps;
            at(s, a) += eps;
            moved = true;
          }
        }
      }
      if (!moved) break;
    }
    x.entries.clear();
    Cost objective = 0;
    for (int s = 0; s < n; ++s)
      for (int r = 0; r < n; ++r)
        if (at(s, r) > 0) {
          x.entries.push_back({s, r, at(s, r)});
          objective += at(s, r) * m.dist(s, r);
        }
    x.objective_units = objective;

    bool shifted = false;
    for (int a = 0; a < n; ++a)
      if (at(a, a) < std::min(profile.left[a], profile.right[a])) shifted = true;

    ++report.instances;
    std::string problem;
    if (x.value() != value) problem = "exchange changed the value";
    const FractionalMatching y = canonicalize(x, m);
    if (problem.empty() && !is_feasible(y)) problem = "output infeasible";
    if (problem.empty() && y.value() != value) problem = "value changed";
    for (int a = 0; a < n && problem.empty(); ++a)
      if (y.units_at(a, a) != std::min(profile.left[a], profile.right[a]))
        problem = "x_ii below min(l_i, r_i) at " + std::to_string(a);
    if (shifted) ++report.nontrivial;
    if (!problem.empty() && report.failures++ == 0)
      report.first_failure = "instance " + std::to_string(i) + ": " + problem;
  }
  return report;
}

bool FrtReport::passed() const {
  return samples > 0 && dominance_violations == 0 && std::isfinite(mean_stretch) &&
         mean_stretch >= 1 && se_all <= se_quarter;  // equal when the stretch never varies
}

std::string FrtReport::text() const {
  std::ostringstream out;
  out << "frt samples=" << samples << " dominance_violations=" << dominance_violations
      << " mean_stretch=" << mean_stretch << " se(" << samples / 4 << ")=" << se_quarter
      << " se(" << samples << ")=" << se_all << "\n";
  return out.str();
}

FrtReport verify_frt(const Metric& metric, int samples, std::uint64_t seed) {
  require(samples >= 8, "need at least 8 samples");
  const int n = metric.size();
  Moments all, quarter;
  FrtReport report;
  report.samples = samples;
  for (int t = 0; t < samples; ++t) {
    Rng rng(seed + static_cast<std::uint64_t>(t));
    const WeightedTree tree = frt_embed(metric, rng);
    double stretch = 0;
    int pairs = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Cost dt = tree_distance(tree, i, j);
        const Cost d = metric.dist(i, j);
        if (dt < d) ++report.dominance_violations;
        if (d > 0) {
          stretch += static_cast<double>(dt) / static_cast<double>(d);
          ++pairs;
        }
      }
    }
    const double s = pairs ? stretch / pairs : 1.0;
    all.add(s);
    if (t < samples / 4) quarter.add(s);
  }
  report.mean_stretch = all.mean();
  report.se_all = all.se();
  report.se_quarter = quarter.se();
  return report;
}

}  // namespace fairbias
