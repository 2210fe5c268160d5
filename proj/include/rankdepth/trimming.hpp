#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rankdepth/depth.hpp"
#include "rankdepth/pairwise.hpp"
#include "rankdepth/sample.hpp"

namespace rankdepth {

enum class TrimTarget { ST, SST };
enum class TrimDepthMode { FixedInitial, RecomputeEachIteration };

struct TrimConfig {
  TrimTarget target = TrimTarget::SST;
  TrimDepthMode depth_mode = TrimDepthMode::RecomputeEachIteration;
  Metric metric = Metric::KendallTau;
  double sst_tolerance = 0.0;
  std::optional<Permutation> reference_center;  // for trace distances
};

/// One snapshot of the trimming loop. Row 0 describes the untouched input;
/// subsequent rows follow each removal of the least-deep set.
struct TrimIteration {
  int index = 0;
  std::vector<Permutation> removed;  // distinct rankings removed this step
  std::size_t removed_count = 0;     // multiset count
  std::size_t remaining = 0;
  int cycles = 0;
  Permutation candidate_median;  // deepest remaining ranking
  std::optional<double> distance_to_reference;
  double median_depth = 0;  // depth of the candidate w.r.t. remaining sample
  double dispersion = 0;    // mean distance of remaining sample to candidate

  TrimIteration() : candidate_median(Permutation::identity(1)) {}
};

struct TrimResult {
  RankingSample trimmed;
  std::vector<TrimIteration> trace;
  bool total_removal_averted = false;  // deepest tied subset was retained
};

namespace detail {

// Depth of each distinct ranking of `eval_support` w.r.t. `reference`.
inline std::map<Permutation, double> support_depths(
    const std::vector<Permutation>& eval_support, const RankingSample& reference,
    Metric m) {
  std::map<Permutation, double> out;
  if (m == Metric::KendallTau) {
    const PairwiseMatrix pw = empirical_pairwise(reference);
    for (const auto& sigma : eval_support)
      out.emplace(sigma, depth_kendall_from_pairwise(pw, sigma));
  } else {
    for (const auto& sigma : eval_support)
      out.emplace(sigma, depth_empirical(reference, sigma, m));
  }
  return out;
}

}  // namespace detail

/// Iteratively removes the least-deep rankings until the empirical
/// distribution meets the target transitivity status.
inline TrimResult trim_to_sst(const RankingSample& sample,
                              const TrimConfig& cfg = {}) {
  if (sample.empty()) throw std::invalid_argument("trim_to_sst: empty sample");
  if (!sample.weights.empty())
    throw std::invalid_argument("trim_to_sst: weighted samples unsupported");

  auto meets_target = [&](Transitivity status) {
    return cfg.target == TrimTarget::SST ? status == Transitivity::SST
                                         : status != Transitivity::NotST;
  };

  TrimResult result;
  std::vector<Permutation> current = sample.rankings;
  int iteration = 0;

  auto snapshot = [&](std::vector<Permutation> removed,
                      std::size_t removed_count) {
    RankingSample cur;
    cur.rankings = current;
    const PairwiseMatrix pw = empirical_pairwise(cur);
    // distinct support to scan for the candidate median
    std::vector<Permutation> support;
    const auto dist = ExplicitDistribution::from_sample(cur);
    for (const auto& [sigma, p] : dist.entries()) support.push_back(sigma);
    auto depths = detail::support_depths(support, cur, cfg.metric);
    TrimIteration it;
    it.index = iteration;
    it.removed = std::move(removed);
    it.removed_count = removed_count;
    it.remaining = current.size();
    it.cycles = count_cycles(pw, cfg.sst_tolerance);
    const Permutation* best = nullptr;
    double best_depth = -1;
    for (const auto& [sigma, d] : depths)
      if (best == nullptr || d > best_depth + 1e-12) {
        best = &sigma;
        best_depth = d;
      }
    it.candidate_median = *best;
    it.median_depth = best_depth;
    if (cfg.reference_center)
      it.distance_to_reference =
          distance(it.candidate_median, *cfg.reference_center, cfg.metric);
    double disp = 0;
    for (const auto& sigma : current)
      disp += distance(sigma, it.candidate_median, cfg.metric);
    it.dispersion = disp / static_cast<double>(current.size());
    result.trace.push_back(std::move(it));
  };

  snapshot({}, 0);

  while (true) {
    RankingSample cur;
    cur.rankings = current;
    const Transitivity status =
        transitivity_status(empirical_pairwise(cur), cfg.sst_tolerance);
    if (meets_target(status)) break;

    std::vector<Permutation> support;
    const auto dist = ExplicitDistribution::from_sample(cur);
    for (const auto& [sigma, p] : dist.entries()) support.push_back(sigma);
    const RankingSample& reference =
        cfg.depth_mode == TrimDepthMode::FixedInitial ? sample : cur;
    auto depths = detail::support_depths(support, reference, cfg.metric);

    double min_depth = std::numeric_limits<double>::infinity();
    for (const auto& [sigma, d] : depths) min_depth = std::min(min_depth, d);
    std::vector<Permutation> argmin;
    for (const auto& [sigma, d] : depths)
      if (d <= min_depth + 1e-12) argmin.push_back(sigma);

    if (argmin.size() == support.size()) {
      // entire support tied at the minimum; retain the deepest-tied subset
      result.total_removal_averted = true;
      break;
    }

    std::vector<Permutation> next;
    next.reserve(current.size());
    std::size_t removed_count = 0;
    for (const auto& sigma : current) {
      bool drop = false;
      for (const auto& victim : argmin)
        if (sigma == victim) {
          drop = true;
          break;
        }
      if (drop) ++removed_count;
      else next.push_back(sigma);
    }
    current = std::move(next);
    ++iteration;
    snapshot(std::move(argmin), removed_count);
  }

  result.trimmed = RankingSample(std::move(current));
  return result;
}

}  // namespace rankdepth
