#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rankdepth/pairwise.hpp"
#include "rankdepth/permutation.hpp"
#include "rankdepth/sample.hpp"

namespace rankdepth {

/// D_P(sigma) = ||d||_inf - E_P[d(sigma, Sigma)].
inline double depth_exact(const ExplicitDistribution& dist,
                          const Permutation& sigma, Metric m) {
  if (sigma.size() != dist.item_count())
    throw std::invalid_argument("depth_exact: size mismatch");
  double risk = 0;
  for (const auto& [nu, p] : dist.entries()) risk += p * distance(sigma, nu, m);
  return max_distance(m, sigma.size()) - risk;
}

inline double depth_empirical(const RankingSample& sample,
                              const Permutation& sigma, Metric m) {
  if (sample.empty())
    throw std::invalid_argument("depth_empirical: empty sample");
  if (sigma.size() != sample.item_count())
    throw std::invalid_argument("depth_empirical: size mismatch");
  double risk = 0;
  const double total = sample.total_weight();
  for (std::size_t i = 0; i < sample.size(); ++i)
    risk += sample.weight(i) * distance(sample.rankings[i], sigma, m);
  return max_distance(m, sigma.size()) - risk / total;
}

/// O(n^2) Kendall depth from the pairwise matrix:
/// C(n,2) - sum_{i<j} [ p_ij I{sigma(i)>sigma(j)} + (1-p_ij) I{sigma(i)<sigma(j)} ].
inline double depth_kendall_from_pairwise(const PairwiseMatrix& m,
                                          const Permutation& sigma) {
  const int n = m.size();
  if (sigma.size() != n)
    throw std::invalid_argument("depth_kendall_from_pairwise: size mismatch");
  double loss = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      loss += sigma(i) > sigma(j) ? m(i, j) : 1.0 - m(i, j);
  return max_distance(Metric::KendallTau, n) - loss;
}

struct DepthExtremes {
  double d_star;   // largest depth value
  double d_floor;  // smallest depth value
};

inline DepthExtremes depth_extremes(const PairwiseMatrix& m) {
  if (transitivity_status(m) == Transitivity::NotST)
    throw std::invalid_argument("depth_extremes: matrix not stochastically transitive");
  const int n = m.size();
  DepthExtremes out{0, 0};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double a = std::abs(m(i, j) - 0.5);
      out.d_star += 0.5 + a;
      out.d_floor += 0.5 - a;
    }
  return out;
}

struct DeepestPair {
  Permutation deepest;
  Permutation least_deep;
};

/// Under SST the deepest ranking is sigma*(i) = #{j != i : p_ij < 1/2}
/// (0-based) and the least deep is its reversal. Ties at p_ij = 1/2 can
/// collide counts, so items are ordered by (count, index) instead.
inline DeepestPair deepest_and_least_deep(const PairwiseMatrix& m) {
  if (transitivity_status(m) != Transitivity::SST)
    throw std::invalid_argument("deepest_and_least_deep: matrix not SST");
  const int n = m.size();
  std::vector<int> losses(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i && m(i, j) < 0.5) ++losses[static_cast<std::size_t>(i)];
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return losses[static_cast<std::size_t>(a)] < losses[static_cast<std::size_t>(b)];
  });
  std::vector<int> ranks(static_cast<std::size_t>(n), 0);
  for (int r = 0; r < n; ++r)
    ranks[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r;
  Permutation deepest(std::move(ranks));
  Permutation least = deepest.reversed();
  return DeepestPair{std::move(deepest), std::move(least)};
}

/// D_P* - D_P(sigma) = 2 sum_{i<j} |p_ij - 1/2| I{(sigma(j)-sigma(i))(p_ij-1/2) < 0}.
inline double depth_gap(const PairwiseMatrix& m, const Permutation& sigma) {
  if (transitivity_status(m) != Transitivity::SST)
    throw std::invalid_argument("depth_gap: matrix not SST");
  const int n = m.size();
  if (sigma.size() != n) throw std::invalid_argument("depth_gap: size mismatch");
  double gap = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (static_cast<double>(sigma(j) - sigma(i)) * (m(i, j) - 0.5) < 0)
        gap += 2.0 * std::abs(m(i, j) - 0.5);
  return gap;
}

/// Depth values for a set of permutations under one metric.
struct DepthProfile {
  Metric metric = Metric::KendallTau;
  int n = 0;
  double d_max = 0;
  bool normalized = false;
  std::vector<std::pair<Permutation, double>> entries;

  /// Exhaustive profile over all of S_n (n <= 8).
  static DepthProfile exhaustive(const ExplicitDistribution& dist, Metric m) {
    DepthProfile prof;
    prof.metric = m;
    prof.n = dist.item_count();
    prof.d_max = max_distance(m, prof.n);
    for_each_permutation(prof.n, [&](const Permutation& sigma) {
      prof.entries.emplace_back(sigma, depth_exact(dist, sigma, m));
    });
    return prof;
  }

  /// Profile over the distinct rankings appearing in a sample.
  static DepthProfile support(const RankingSample& sample, Metric m) {
    DepthProfile prof;
    prof.metric = m;
    prof.n = sample.item_count();
    prof.d_max = max_distance(m, prof.n);
    const ExplicitDistribution dist = ExplicitDistribution::from_sample(sample);
    for (const auto& [sigma, p] : dist.entries())
      prof.entries.emplace_back(sigma, depth_empirical(sample, sigma, m));
    return prof;
  }

  DepthProfile normalize() const {
    DepthProfile out = *this;
    if (!out.normalized && out.d_max > 0)
      for (auto& [sigma, v] : out.entries) v /= out.d_max;
    out.normalized = true;
    return out;
  }
};

/// Superlevel set {sigma : depth >= u} of the profile.
inline std::vector<Permutation> depth_region(const DepthProfile& profile,
                                             double u) {
  std::vector<Permutation> out;
  for (const auto& [sigma, v] : profile.entries)
    if (v >= u) out.push_back(sigma);
  return out;
}

/// Level set {sigma : depth == u within 1e-12}.
inline std::vector<Permutation> depth_contour(const DepthProfile& profile,
                                              double u) {
  std::vector<Permutation> out;
  for (const auto& [sigma, v] : profile.entries)
    if (std::abs(v - u) <= 1e-12) out.push_back(sigma);
  return out;
}

/// High-probability bound on sup_sigma |D_hat_N - D_P|:
/// ||d||_inf * sqrt(log(2 n!/delta) / (2N)).
inline double deviation_bound(std::size_t n_samples, double delta, Metric m,
                              int n) {
  if (n_samples < 1)
    throw std::invalid_argument("deviation_bound: N must be >= 1");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("deviation_bound: delta must lie in (0,1)");
  return max_distance(m, n) *
         std::sqrt(std::log(2.0 * factorial(n) / delta) /
                   (2.0 * static_cast<double>(n_samples)));
}

}  // namespace rankdepth
