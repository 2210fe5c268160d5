#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "rankdepth/depth.hpp"
#include "rankdepth/sample.hpp"

namespace rankdepth {

inline double gaussian_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

/// Survivor function S(u) = P{D_P(Sigma) >= u} of the (discrete) depth
/// distribution, stored as jump points with masses. Smoothed estimates keep
/// the same jumps and evaluate through the Gaussian kernel convolution.
struct SurvivorEstimate {
  enum class Kind { Plain, TwoSplit, Smoothed };

  Kind kind = Kind::Plain;
  std::vector<double> jumps;   // strictly increasing depth values
  std::vector<double> masses;  // positive, sum to 1
  double bandwidth = 0;        // smoothed only

  static SurvivorEstimate from_depths(std::vector<double> depths,
                                      std::vector<double> weights, Kind kind) {
    if (depths.empty())
      throw std::invalid_argument("survivor: no depth values");
    std::map<double, double> agg;
    double total = 0;
    for (std::size_t i = 0; i < depths.size(); ++i) {
      const double w = weights.empty() ? 1.0 : weights[i];
      agg[depths[i]] += w;
      total += w;
    }
    SurvivorEstimate s;
    s.kind = kind;
    for (const auto& [d, w] : agg) {
      // merge depth values that differ only by floating-point fuzz
      if (!s.jumps.empty() &&
          d - s.jumps.back() <= 1e-9 * std::max(1.0, std::abs(d))) {
        s.masses.back() += w / total;
      } else {
        s.jumps.push_back(d);
        s.masses.push_back(w / total);
      }
    }
    return s;
  }

  double value(double u) const {
    if (kind == Kind::Smoothed) {
      double v = 0;
      for (std::size_t k = 0; k < jumps.size(); ++k)
        v += masses[k] *
             (0.5 * std::erfc((u - jumps[k]) / (bandwidth * std::sqrt(2.0))));
      return v;
    }
    double v = 0;
    for (std::size_t k = 0; k < jumps.size(); ++k)
      if (jumps[k] >= u) v += masses[k];
    return v;
  }
};

inline SurvivorEstimate survivor(const ExplicitDistribution& dist, Metric m) {
  std::vector<double> depths, weights;
  for (const auto& [sigma, p] : dist.entries()) {
    depths.push_back(depth_exact(dist, sigma, m));
    weights.push_back(p);
  }
  return SurvivorEstimate::from_depths(std::move(depths), std::move(weights),
                                       SurvivorEstimate::Kind::Plain);
}

inline SurvivorEstimate survivor(const RankingSample& sample, Metric m) {
  if (sample.empty()) throw std::invalid_argument("survivor: empty sample");
  std::vector<double> depths, weights;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    depths.push_back(depth_empirical(sample, sample.rankings[i], m));
    weights.push_back(sample.weight(i));
  }
  return SurvivorEstimate::from_depths(std::move(depths), std::move(weights),
                                       SurvivorEstimate::Kind::Plain);
}

/// 2-split estimator: depths of the second half of the sample, evaluated
/// against the empirical distribution of the first floor(N/2) rankings.
inline SurvivorEstimate two_split_survivor(const RankingSample& sample,
                                           Metric m) {
  const std::size_t n = sample.size();
  if (n < 2)
    throw std::invalid_argument("two_split_survivor: need at least 2 rankings");
  const std::size_t half = n / 2;
  RankingSample first(std::vector<Permutation>(sample.rankings.begin(),
                                               sample.rankings.begin() +
                                                   static_cast<std::ptrdiff_t>(half)));
  std::vector<double> depths;
  for (std::size_t i = half; i < n; ++i)
    depths.push_back(depth_empirical(first, sample.rankings[i], m));
  return SurvivorEstimate::from_depths(std::move(depths), {},
                                       SurvivorEstimate::Kind::TwoSplit);
}

struct SmoothingConfig {
  double bandwidth;
  explicit SmoothingConfig(double h) : bandwidth(h) {
    if (!(h > 0)) throw std::invalid_argument("smoothing: bandwidth must be > 0");
  }
};

/// Default bandwidth: max(1e-6, 0.5 * IQR * N^{-1/5}) over the depth jumps
/// weighted by mass.
inline double default_bandwidth(const SurvivorEstimate& s, std::size_t n_samples) {
  auto quantile = [&](double q) {
    double acc = 0;
    for (std::size_t k = 0; k < s.jumps.size(); ++k) {
      acc += s.masses[k];
      if (acc >= q) return s.jumps[k];
    }
    return s.jumps.back();
  };
  const double iqr = quantile(0.75) - quantile(0.25);
  return std::max(1e-6, 0.5 * iqr *
                            std::pow(static_cast<double>(n_samples), -0.2));
}

/// Exact convolution of the step survivor with a Gaussian kernel.
inline SurvivorEstimate smoothed_survivor(const SurvivorEstimate& s,
                                          const SmoothingConfig& cfg) {
  SurvivorEstimate out = s;
  out.kind = SurvivorEstimate::Kind::Smoothed;
  out.bandwidth = cfg.bandwidth;
  return out;
}

/// inf{u : S(u) <= 1 - alpha} for the strictly decreasing smoothed survivor,
/// located by bisection to 1e-10.
inline double smoothed_inverse(const SurvivorEstimate& s, double alpha) {
  if (s.kind != SurvivorEstimate::Kind::Smoothed)
    throw std::invalid_argument("smoothed_inverse: estimate is not smoothed");
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("smoothed_inverse: alpha must lie in (0,1)");
  const double target = 1.0 - alpha;
  double lo = s.jumps.front(), hi = s.jumps.back();
  // widen until the target is bracketed (tails are Gaussian)
  double span = std::max(1.0, 10.0 * s.bandwidth);
  while (s.value(lo) < target) lo -= span;
  while (s.value(hi) > target) hi += span;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (s.value(mid) > target) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Mid-distribution quantile of a discrete variable with distinct values
/// delta_1 < ... < delta_d and masses p_1..p_d; linear interpolation between
/// pi_k = sum_{i<k} p_i + p_k/2.
inline double mid_quantile(const std::vector<double>& values,
                           const std::vector<double>& masses, double alpha) {
  if (values.empty() || values.size() != masses.size())
    throw std::invalid_argument("mid_quantile: bad inputs");
  if (alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("mid_quantile: alpha must lie in [0,1]");
  for (std::size_t k = 1; k < values.size(); ++k)
    if (!(values[k] > values[k - 1]))
      throw std::invalid_argument("mid_quantile: values must be strictly increasing");
  std::vector<double> pi(values.size());
  double acc = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    pi[k] = acc + masses[k] / 2.0;
    acc += masses[k];
  }
  if (alpha <= pi.front()) return values.front();
  if (alpha >= pi.back()) return values.back();
  std::size_t k = 0;
  while (alpha > pi[k + 1]) ++k;
  const double lambda = (pi[k + 1] - alpha) / (pi[k + 1] - pi[k]);
  return lambda * values[k] + (1.0 - lambda) * values[k + 1];
}

inline double mid_quantile(const SurvivorEstimate& s, double alpha) {
  return mid_quantile(s.jumps, s.masses, alpha);
}

}  // namespace rankdepth
