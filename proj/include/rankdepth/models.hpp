#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "rankdepth/pairwise.hpp"
#include "rankdepth/permutation.hpp"
#include "rankdepth/sample.hpp"

namespace rankdepth {

using Rng = std::mt19937_64;

/// Mallows model on S_n: P(sigma) proportional to phi^{d_tau(center, sigma)}.
struct MallowsParams {
  Permutation center;
  double dispersion;  // phi in (0, 1]

  MallowsParams(Permutation c, double phi)
      : center(std::move(c)), dispersion(phi) {
    if (!(phi > 0.0) || phi > 1.0)
      throw std::invalid_argument("mallows: phi must lie in (0,1]");
  }
};

/// Z_0 = prod_{i=1}^{n-1} sum_{j=0}^{i} phi^j; equals n! at phi = 1.
inline double mallows_normalizer(int n, double phi) {
  if (n < 1) throw std::invalid_argument("mallows_normalizer: n must be >= 1");
  if (!(phi > 0.0) || phi > 1.0)
    throw std::invalid_argument("mallows_normalizer: phi must lie in (0,1]");
  double z = 1.0;
  for (int i = 1; i < n; ++i) {
    double inner = 0.0, pw = 1.0;
    for (int j = 0; j <= i; ++j) {
      inner += pw;
      pw *= phi;
    }
    z *= inner;
  }
  return z;
}

inline double mallows_pmf(const MallowsParams& theta, const Permutation& sigma) {
  if (sigma.size() != theta.center.size())
    throw std::invalid_argument("mallows_pmf: size mismatch");
  const double d = distance(theta.center, sigma, Metric::KendallTau);
  return std::pow(theta.dispersion, d) /
         mallows_normalizer(sigma.size(), theta.dispersion);
}

/// Closed-form pairwise matrix of the Mallows model,
/// p_ij = H(center(j) - center(i), phi) with H built from h(k) = k/(1-phi^k).
inline PairwiseMatrix mallows_pairwise(const MallowsParams& theta) {
  const int n = theta.center.size();
  const double phi = theta.dispersion;
  std::vector<double> p(static_cast<std::size_t>(n) * n, 0.5);
  if (phi < 1.0) {
    auto h = [phi](int k) {
      return static_cast<double>(k) / (1.0 - std::pow(phi, k));
    };
    auto big_h = [&](int k) {  // k != 0
      if (k >= 1) return h(k + 1) - h(k);
      return 1.0 - (h(-k + 1) - h(-k));
    };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        p[static_cast<std::size_t>(i) * n + j] =
            big_h(theta.center(j) - theta.center(i));
      }
  }
  return PairwiseMatrix(n, std::move(p));
}

/// Plackett-Luce model: items chosen stagewise with probability proportional
/// to their weight among the items not yet placed.
struct PlackettLuceParams {
  std::vector<double> weights;

  explicit PlackettLuceParams(std::vector<double> w) : weights(std::move(w)) {
    if (weights.empty())
      throw std::invalid_argument("plackett-luce: no weights");
    for (double v : weights)
      if (!(v > 0)) throw std::invalid_argument("plackett-luce: weights must be positive");
  }
  int item_count() const { return static_cast<int>(weights.size()); }
};

inline double plackett_luce_pmf(const PlackettLuceParams& params,
                                const Permutation& sigma) {
  if (sigma.size() != params.item_count())
    throw std::invalid_argument("plackett_luce_pmf: size mismatch");
  const Permutation order = sigma.inverse();  // items by preference position
  double remaining = 0;
  for (double v : params.weights) remaining += v;
  double p = 1.0;
  for (int t = 0; t < sigma.size(); ++t) {
    const double v = params.weights[static_cast<std::size_t>(order(t))];
    p *= v / remaining;
    remaining -= v;
  }
  return p;
}

inline PairwiseMatrix plackett_luce_pairwise(const PlackettLuceParams& params) {
  const int n = params.item_count();
  std::vector<double> p(static_cast<std::size_t>(n) * n, 0.5);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        p[static_cast<std::size_t>(i) * n + j] =
            params.weights[static_cast<std::size_t>(i)] /
            (params.weights[static_cast<std::size_t>(i)] +
             params.weights[static_cast<std::size_t>(j)]);
  return PairwiseMatrix(n, std::move(p));
}

inline ExplicitDistribution explicit_from(const MallowsParams& theta) {
  const int n = theta.center.size();
  if (n > kMaxExplicitItems)
    throw std::invalid_argument("explicit_from: n too large");
  std::map<Permutation, double> entries;
  double total = 0;
  for_each_permutation(n, [&](const Permutation& sigma) {
    const double p =
        std::pow(theta.dispersion,
                 distance(theta.center, sigma, Metric::KendallTau));
    entries.emplace(sigma, p);
    total += p;
  });
  for (auto& [sigma, p] : entries) p /= total;
  return ExplicitDistribution(n, std::move(entries));
}

inline ExplicitDistribution explicit_from(const PlackettLuceParams& params) {
  const int n = params.item_count();
  if (n > kMaxExplicitItems)
    throw std::invalid_argument("explicit_from: n too large");
  std::map<Permutation, double> entries;
  double total = 0;
  for_each_permutation(n, [&](const Permutation& sigma) {
    const double p = plackett_luce_pmf(params, sigma);
    entries.emplace(sigma, p);
    total += p;
  });
  for (auto& [sigma, p] : entries) p /= total;  // absorb rounding
  return ExplicitDistribution(n, std::move(entries));
}

inline ExplicitDistribution explicit_from(const RankingSample& sample) {
  return ExplicitDistribution::from_sample(sample);
}

namespace detail {

// Repeated insertion: item i of the identity model goes to position j among
// the i already-placed items with probability phi^{i-j}, adding i-j
// discordant pairs. Exact for every n; used above the dense-pmf cutoff.
inline Permutation sample_mallows_rim(int n, double phi, Rng& rng) {
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    // cumulative weights of phi^{i-j}, j = 0..i
    double total = 0, pw = 1.0;
    std::vector<double> cum(static_cast<std::size_t>(i) + 1);
    for (int j = i; j >= 0; --j) {
      total += pw;
      cum[static_cast<std::size_t>(j)] = pw;
      pw *= phi;
    }
    const double u = unif(rng) * total;
    double acc = 0;
    int pos = i;
    for (int j = 0; j <= i; ++j) {
      acc += cum[static_cast<std::size_t>(j)];
      if (u <= acc) {
        pos = j;
        break;
      }
    }
    order.insert(order.begin() + pos, i);
  }
  std::vector<int> ranks(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) ranks[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r;
  return Permutation(std::move(ranks));
}

inline Permutation sample_explicit(const ExplicitDistribution& dist, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  double acc = 0;
  const Permutation* last = nullptr;
  for (const auto& [sigma, p] : dist.entries()) {
    acc += p;
    last = &sigma;
    if (u <= acc) return sigma;
  }
  return *last;  // rounding tail
}

}  // namespace detail

/// i.i.d. Mallows draws; exact inverse-CDF over the dense pmf for small n,
/// repeated insertion beyond that. Deterministic given the generator state.
inline RankingSample sample_mallows(const MallowsParams& theta, std::size_t count,
                                    Rng& rng) {
  if (count < 1) throw std::invalid_argument("sample_mallows: count must be >= 1");
  const int n = theta.center.size();
  std::vector<Permutation> rankings;
  rankings.reserve(count);
  if (n <= kMaxExplicitItems) {
    const ExplicitDistribution dist = explicit_from(theta);
    for (std::size_t i = 0; i < count; ++i)
      rankings.push_back(detail::sample_explicit(dist, rng));
  } else {
    for (std::size_t i = 0; i < count; ++i)
      rankings.push_back(compose(
          detail::sample_mallows_rim(n, theta.dispersion, rng), theta.center));
  }
  return RankingSample(std::move(rankings));
}

inline RankingSample sample_mallows(const MallowsParams& theta, std::size_t count,
                                    std::uint64_t seed) {
  Rng rng(seed);
  return sample_mallows(theta, count, rng);
}

inline RankingSample sample_plackett_luce(const PlackettLuceParams& params,
                                          std::size_t count, Rng& rng) {
  if (count < 1)
    throw std::invalid_argument("sample_plackett_luce: count must be >= 1");
  const int n = params.item_count();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Permutation> rankings;
  rankings.reserve(count);
  std::vector<int> remaining;
  for (std::size_t s = 0; s < count; ++s) {
    remaining.resize(static_cast<std::size_t>(n));
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<int> ranks(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
      double total = 0;
      for (int item : remaining) total += params.weights[static_cast<std::size_t>(item)];
      const double u = unif(rng) * total;
      double acc = 0;
      std::size_t pick = remaining.size() - 1;
      for (std::size_t k = 0; k < remaining.size(); ++k) {
        acc += params.weights[static_cast<std::size_t>(remaining[k])];
        if (u <= acc) {
          pick = k;
          break;
        }
      }
      ranks[static_cast<std::size_t>(remaining[pick])] = t;
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    rankings.emplace_back(std::move(ranks));
  }
  return RankingSample(std::move(rankings));
}

inline RankingSample sample_plackett_luce(const PlackettLuceParams& params,
                                          std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  return sample_plackett_luce(params, count, rng);
}

}  // namespace rankdepth
