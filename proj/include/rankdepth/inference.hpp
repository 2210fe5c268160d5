#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rankdepth/depth.hpp"
#include "rankdepth/pairwise.hpp"
#include "rankdepth/sample.hpp"
#include "rankdepth/survivor.hpp"

namespace rankdepth {

struct DDPoint {
  Permutation sigma;
  double depth1 = 0, depth2 = 0;
  int origin = 1;  // 1 or 2

  DDPoint(Permutation s, double d1, double d2, int o)
      : sigma(std::move(s)), depth1(d1), depth2(d2), origin(o) {}
};

struct DDPlotData {
  Metric metric = Metric::KendallTau;
  bool normalized = false;
  std::vector<DDPoint> points;  // one per element of the pooled multiset
};

namespace detail {

inline std::vector<double> depths_against(const RankingSample& reference,
                                          const std::vector<Permutation>& queries,
                                          Metric m) {
  std::vector<double> out;
  out.reserve(queries.size());
  if (m == Metric::KendallTau) {
    const PairwiseMatrix pw = empirical_pairwise(reference);
    for (const auto& q : queries)
      out.push_back(depth_kendall_from_pairwise(pw, q));
  } else {
    for (const auto& q : queries)
      out.push_back(depth_empirical(reference, q, m));
  }
  return out;
}

}  // namespace detail

/// Depth-vs-depth scatter data: every ranking of the pooled multiset scored
/// against both empirical distributions.
inline DDPlotData dd_plot(const RankingSample& s1, const RankingSample& s2,
                          Metric m, bool normalized = false) {
  if (s1.empty() || s2.empty())
    throw std::invalid_argument("dd_plot: empty sample");
  if (s1.item_count() != s2.item_count())
    throw std::invalid_argument("dd_plot: size mismatch");
  std::vector<Permutation> pooled = s1.rankings;
  pooled.insert(pooled.end(), s2.rankings.begin(), s2.rankings.end());
  const std::vector<double> d1 = detail::depths_against(s1, pooled, m);
  const std::vector<double> d2 = detail::depths_against(s2, pooled, m);
  const double scale = normalized ? max_distance(m, s1.item_count()) : 1.0;
  DDPlotData data;
  data.metric = m;
  data.normalized = normalized;
  for (std::size_t i = 0; i < pooled.size(); ++i)
    data.points.emplace_back(pooled[i], d1[i] / scale, d2[i] / scale,
                             i < s1.size() ? 1 : 2);
  return data;
}

struct TestResult {
  double statistic = 0;  // rank-sum W of group 1
  double z = 0;
  double p_value = 1;
  std::size_t n1 = 0, n2 = 0;
  bool exact = false;
};

namespace detail {

inline std::vector<double> midranks(const std::vector<double>& pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
    i = j + 1;
  }
  return ranks;
}

}  // namespace detail

/// Two-sided Wilcoxon rank-sum p-value by normal approximation with
/// midranks, tie-corrected variance and 0.5 continuity correction.
inline TestResult wilcoxon_normal_approx(const std::vector<double>& x,
                                         const std::vector<double>& y) {
  if (x.empty() || y.empty())
    throw std::invalid_argument("wilcoxon: empty group");
  const std::size_t n1 = x.size(), n2 = y.size(), n = n1 + n2;
  std::vector<double> pooled = x;
  pooled.insert(pooled.end(), y.begin(), y.end());
  const std::vector<double> ranks = detail::midranks(pooled);
  double w = 0;
  for (std::size_t i = 0; i < n1; ++i) w += ranks[i];

  // tie correction: sum over tie groups of t^3 - t
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double tie_sum = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    tie_sum += t * t * t - t;
    i = j + 1;
  }

  const double dn = static_cast<double>(n);
  const double mean = static_cast<double>(n1) * (dn + 1.0) / 2.0;
  const double var = static_cast<double>(n1) * static_cast<double>(n2) / 12.0 *
                     ((dn + 1.0) - tie_sum / (dn * (dn - 1.0)));

  TestResult result;
  result.statistic = w;
  result.n1 = n1;
  result.n2 = n2;
  const double dev = std::abs(w - mean);
  if (var <= 0 || dev <= 0.5) {
    result.z = 0;
    result.p_value = 1;
  } else {
    result.z = (dev - 0.5) / std::sqrt(var) * (w > mean ? 1.0 : -1.0);
    result.p_value = 2.0 * (1.0 - gaussian_cdf(std::abs(result.z)));
  }
  return result;
}

/// Exact two-sided p by enumerating every assignment of the pooled midranks
/// to group 1: p = min(1, 2*min(P(W <= w), P(W >= w))).
inline TestResult wilcoxon_exact(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  if (x.empty() || y.empty())
    throw std::invalid_argument("wilcoxon: empty group");
  const std::size_t n1 = x.size(), n2 = y.size(), n = n1 + n2;
  if (n > 20) throw std::invalid_argument("wilcoxon_exact: groups too large");
  std::vector<double> pooled = x;
  pooled.insert(pooled.end(), y.begin(), y.end());
  const std::vector<double> ranks = detail::midranks(pooled);
  double w = 0;
  for (std::size_t i = 0; i < n1; ++i) w += ranks[i];

  std::size_t total = 0, count_le = 0, count_ge = 0;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n1), true);
  // iterate over all combinations via prev_permutation on the mask
  std::sort(pick.begin(), pick.end(), std::greater<>());
  do {
    double s = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (pick[k]) s += ranks[k];
    ++total;
    if (s <= w + 1e-9) ++count_le;
    if (s >= w - 1e-9) ++count_ge;
  } while (std::prev_permutation(pick.begin(), pick.end()));

  TestResult result;
  result.statistic = w;
  result.n1 = n1;
  result.n2 = n2;
  result.exact = true;
  const double p_le = static_cast<double>(count_le) / static_cast<double>(total);
  const double p_ge = static_cast<double>(count_ge) / static_cast<double>(total);
  result.p_value = std::min(1.0, 2.0 * std::min(p_le, p_ge));
  const double mean = static_cast<double>(n1) * (static_cast<double>(n) + 1.0) / 2.0;
  result.z = w - mean;  // informational for the exact path
  return result;
}

/// Auto-selecting front end: exact enumeration for tiny inputs, normal
/// approximation otherwise.
inline TestResult wilcoxon_rank_sum(const std::vector<double>& x,
                                    const std::vector<double>& y) {
  if (!x.empty() && !y.empty() && x.size() + y.size() <= 12)
    return wilcoxon_exact(x, y);
  return wilcoxon_normal_approx(x, y);
}

/// Two-sample homogeneity test: depths of both tested samples w.r.t. the
/// held-out reference sample, compared by Wilcoxon rank-sum.
inline TestResult homogeneity_test(const RankingSample& reference,
                                   const RankingSample& s1,
                                   const RankingSample& s2, Metric m) {
  if (reference.empty())
    throw std::invalid_argument("homogeneity_test: empty reference");
  if (s1.empty() || s2.empty())
    throw std::invalid_argument("homogeneity_test: empty tested sample");
  if (s1.item_count() != reference.item_count() ||
      s2.item_count() != reference.item_count())
    throw std::invalid_argument("homogeneity_test: size mismatch");
  const std::vector<double> d1 = detail::depths_against(reference, s1.rankings, m);
  const std::vector<double> d2 = detail::depths_against(reference, s2.rankings, m);
  return wilcoxon_rank_sum(d1, d2);
}

struct OutlierThreshold {
  enum class Kind { Level, Quantile };
  Kind kind = Kind::Level;
  double value = 0;  // Level: normalized depth in [0,1]; Quantile: alpha

  static OutlierThreshold level(double u) { return {Kind::Level, u}; }
  static OutlierThreshold quantile(double alpha) { return {Kind::Quantile, alpha}; }
};

struct OutlierResult {
  std::vector<std::size_t> indices;  // sample indices strictly below threshold
  double threshold_used = 0;         // in raw depth units
};

/// Flags rankings whose empirical depth falls strictly below the threshold.
/// Level thresholds are given in normalized [0,1] units; quantile thresholds
/// use the mid-distribution quantile of the depth sample.
inline OutlierResult detect_outliers(const RankingSample& sample, Metric m,
                                     const OutlierThreshold& threshold) {
  if (sample.empty())
    throw std::invalid_argument("detect_outliers: empty sample");
  const std::vector<double> depths =
      detail::depths_against(sample, sample.rankings, m);
  OutlierResult result;
  if (threshold.kind == OutlierThreshold::Kind::Level) {
    result.threshold_used =
        threshold.value * max_distance(m, sample.item_count());
  } else {
    auto s = SurvivorEstimate::from_depths(depths, {},
                                           SurvivorEstimate::Kind::Plain);
    result.threshold_used = mid_quantile(s, threshold.value);
  }
  for (std::size_t i = 0; i < depths.size(); ++i)
    if (depths[i] < result.threshold_used) result.indices.push_back(i);
  return result;
}

}  // namespace rankdepth
