#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankdepth/depth.hpp"
#include "rankdepth/models.hpp"
#include "rankdepth/pairwise.hpp"
#include "rankdepth/sample.hpp"

namespace rankdepth {

struct ConsensusResult {
  std::vector<Permutation> medians;  // all minimizers, lexicographic order
  double risk = 0;                   // L at a median
  std::string method;
};

/// Exhaustive Kemeny/consensus search over S_n (n <= 8).
inline ConsensusResult kemeny_bruteforce(const ExplicitDistribution& dist,
                                         Metric m) {
  const int n = dist.item_count();
  ConsensusResult out;
  out.method = "kemeny-bf";
  double best = std::numeric_limits<double>::infinity();
  for_each_permutation(n, [&](const Permutation& sigma) {
    double risk = 0;
    for (const auto& [nu, p] : dist.entries()) risk += p * distance(sigma, nu, m);
    if (risk < best - 1e-12) {
      best = risk;
      out.medians.clear();
      out.medians.push_back(sigma);
    } else if (risk <= best + 1e-12) {
      out.medians.push_back(sigma);
    }
  });
  out.risk = best;
  return out;
}

inline ConsensusResult kemeny_bruteforce(const RankingSample& sample, Metric m) {
  if (sample.empty())
    throw std::invalid_argument("kemeny_bruteforce: empty sample");
  if (sample.item_count() > kMaxExplicitItems)
    throw std::invalid_argument("kemeny_bruteforce: n too large");
  return kemeny_bruteforce(ExplicitDistribution::from_sample(sample), m);
}

/// Closed-form Kemeny median of an SST pairwise matrix (consensus-facing
/// alias of the deepest ranking).
inline Permutation kemeny_sst(const PairwiseMatrix& m) {
  return deepest_and_least_deep(m).deepest;
}

struct BordaConfig {
  enum class WeightMode { Uniform, DepthTrimmed, DepthAffine };

  WeightMode mode = WeightMode::Uniform;
  double mu = 0;  // DepthTrimmed: keep rankings with depth > mu
  double affine_intercept = 0, affine_slope = 1;  // DepthAffine: a + b*depth
  Metric depth_metric = Metric::KendallTau;

  static BordaConfig uniform() { return {}; }
  static BordaConfig depth_trimmed(double mu, Metric m = Metric::KendallTau) {
    BordaConfig c;
    c.mode = WeightMode::DepthTrimmed;
    c.mu = mu;
    c.depth_metric = m;
    return c;
  }
  static BordaConfig depth_affine(double a, double b,
                                  Metric m = Metric::KendallTau) {
    BordaConfig c;
    c.mode = WeightMode::DepthAffine;
    c.affine_intercept = a;
    c.affine_slope = b;
    c.depth_metric = m;
    return c;
  }
};

/// Borda aggregation: items ordered by ascending (weighted) mean rank, ties
/// broken by item index. Depth weights are computed on the sample itself.
inline Permutation borda(const RankingSample& sample, const BordaConfig& cfg = {}) {
  if (sample.empty()) throw std::invalid_argument("borda: empty sample");
  const int n = sample.item_count();

  std::map<Permutation, double> depth_cache;
  if (cfg.mode != BordaConfig::WeightMode::Uniform) {
    std::vector<Permutation> support;
    const auto dist = ExplicitDistribution::from_sample(sample);
    for (const auto& [sigma, p] : dist.entries()) support.push_back(sigma);
    if (cfg.depth_metric == Metric::KendallTau) {
      const PairwiseMatrix pw = empirical_pairwise(sample);
      for (const auto& sigma : support)
        depth_cache.emplace(sigma, depth_kendall_from_pairwise(pw, sigma));
    } else {
      for (const auto& sigma : support)
        depth_cache.emplace(sigma, depth_empirical(sample, sigma, cfg.depth_metric));
    }
  }

  auto ranking_weight = [&](std::size_t i) {
    const double base = sample.weight(i);
    switch (cfg.mode) {
      case BordaConfig::WeightMode::Uniform:
        return base;
      case BordaConfig::WeightMode::DepthTrimmed:
        return depth_cache.at(sample.rankings[i]) > cfg.mu ? base : 0.0;
      case BordaConfig::WeightMode::DepthAffine:
        return base * (cfg.affine_intercept +
                       cfg.affine_slope * depth_cache.at(sample.rankings[i]));
    }
    return base;
  };

  std::vector<double> score(static_cast<std::size_t>(n), 0.0);
  double total = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double w = ranking_weight(i);
    if (w == 0) continue;
    total += w;
    for (int item = 0; item < n; ++item)
      score[static_cast<std::size_t>(item)] += w * sample.rankings[i](item);
  }
  if (total <= 0)
    throw std::invalid_argument("borda: every ranking trimmed away");

  std::vector<int> items(static_cast<std::size_t>(n));
  std::iota(items.begin(), items.end(), 0);
  std::stable_sort(items.begin(), items.end(), [&](int a, int b) {
    return score[static_cast<std::size_t>(a)] < score[static_cast<std::size_t>(b)];
  });
  std::vector<int> ranks(static_cast<std::size_t>(n));
  for (int pos = 0; pos < n; ++pos)
    ranks[static_cast<std::size_t>(items[static_cast<std::size_t>(pos)])] = pos;
  return Permutation(std::move(ranks));
}

struct BreakdownSeedResult {
  std::uint64_t seed = 0;
  std::size_t k_plain = 0, k_trimmed = 0;  // smallest breaking counts
  double frac_plain = 0, frac_trimmed = 0; // k / (k + N)
  bool plain_capped = false, trimmed_capped = false;
  bool plain_boundary_tie = false, trimmed_boundary_tie = false;
};

struct BreakdownReport {
  double delta = 0;
  double mu = 0;
  std::size_t clean_size = 0;
  std::vector<BreakdownSeedResult> per_seed;
  double mean_frac_plain = 0, mean_frac_trimmed = 0;
  double ratio = 0;  // mean_frac_plain / mean_frac_trimmed
};

namespace detail {

// Smallest k such that appending k copies of `adversary` moves the estimator
// at least delta away from `baseline`; exponential bracketing + bisection,
// boundary verified afterwards. Returns cap+1 when the cap never breaks.
template <typename Estimate>
std::size_t smallest_breaking_count(const Estimate& estimate,
                                    const Permutation& baseline, double delta,
                                    std::size_t cap, bool* boundary_ok) {
  auto breaks = [&](std::size_t k) {
    return distance(baseline, estimate(k), Metric::KendallTau) >= delta;
  };
  if (!breaks(cap)) {
    *boundary_ok = true;
    return cap + 1;
  }
  std::size_t lo = 0, hi = cap;  // breaks(lo) false (k=0 is baseline), breaks(hi) true
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (breaks(mid)) hi = mid;
    else lo = mid;
  }
  *boundary_ok = breaks(hi) && (hi == 0 || !breaks(hi - 1));
  return hi;
}

}  // namespace detail

/// Monte Carlo delta-breakdown comparison of plain vs depth-trimmed Borda.
/// The adversary is all mass on the reversal of the clean Borda output;
/// trimming depths are computed on the contaminated pooled sample.
inline BreakdownReport breakdown_experiment(const MallowsParams& params,
                                            std::size_t n_clean, double delta,
                                            double mu,
                                            const std::vector<std::uint64_t>& seeds,
                                            std::size_t cap_multiplier = 10) {
  if (delta < 1) throw std::invalid_argument("breakdown: delta must be >= 1");
  if (seeds.empty()) throw std::invalid_argument("breakdown: no seeds");
  BreakdownReport report;
  report.delta = delta;
  report.mu = mu;
  report.clean_size = n_clean;
  const std::size_t cap = cap_multiplier * n_clean + n_clean + 2;

  for (std::uint64_t seed : seeds) {
    const RankingSample clean = sample_mallows(params, n_clean, seed);
    const Permutation base_plain = borda(clean);
    const Permutation adversary = base_plain.reversed();
    // Trimming weights are fixed by the clean sample's depth (the breakdown
    // proposition's w(sigma) = I{D_P(sigma) > mu}): the adversary cannot
    // raise its own weight by adding copies of itself.
    const PairwiseMatrix pw_clean = empirical_pairwise(clean);
    auto trimmed_borda = [&](const RankingSample& pooled) {
      RankingSample kept;
      for (const auto& sigma : pooled.rankings)
        if (depth_kendall_from_pairwise(pw_clean, sigma) > mu)
          kept.rankings.push_back(sigma);
      return kept.empty() ? borda(pooled) : borda(kept);
    };
    const Permutation base_trimmed = trimmed_borda(clean);

    auto contaminated = [&](std::size_t k) {
      RankingSample pooled = clean;
      pooled.rankings.insert(pooled.rankings.end(), k, adversary);
      return pooled;
    };

    BreakdownSeedResult r;
    r.seed = seed;
    bool ok = false;
    r.k_plain = detail::smallest_breaking_count(
        [&](std::size_t k) { return borda(contaminated(k)); }, base_plain,
        delta, cap, &ok);
    r.plain_capped = r.k_plain > cap;
    r.plain_boundary_tie = !ok;
    r.k_trimmed = detail::smallest_breaking_count(
        [&](std::size_t k) { return trimmed_borda(contaminated(k)); },
        base_trimmed, delta, cap, &ok);
    r.trimmed_capped = r.k_trimmed > cap;
    r.trimmed_boundary_tie = !ok;
    r.frac_plain = static_cast<double>(r.k_plain) /
                   static_cast<double>(r.k_plain + n_clean);
    r.frac_trimmed = static_cast<double>(r.k_trimmed) /
                     static_cast<double>(r.k_trimmed + n_clean);
    report.per_seed.push_back(r);
  }

  for (const auto& r : report.per_seed) {
    report.mean_frac_plain += r.frac_plain;
    report.mean_frac_trimmed += r.frac_trimmed;
  }
  report.mean_frac_plain /= static_cast<double>(report.per_seed.size());
  report.mean_frac_trimmed /= static_cast<double>(report.per_seed.size());
  report.ratio = report.mean_frac_plain / report.mean_frac_trimmed;
  return report;
}

}  // namespace rankdepth
