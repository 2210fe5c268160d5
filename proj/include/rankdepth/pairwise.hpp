#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankdepth/permutation.hpp"
#include "rankdepth/sample.hpp"

namespace rankdepth {

/// Matrix of pairwise probabilities p_ij = P{Sigma(i) < Sigma(j)}.
/// The diagonal is fixed at 0.5 by convention and p_ij + p_ji = 1.
class PairwiseMatrix {
 public:
  PairwiseMatrix(int n, std::vector<double> p) : n_(n), p_(std::move(p)) {
    if (n < 1) throw std::invalid_argument("pairwise: n must be >= 1");
    if (p_.size() != static_cast<std::size_t>(n) * n)
      throw std::invalid_argument("pairwise: wrong entry count");
    for (int i = 0; i < n; ++i) {
      p_[idx(i, i)] = 0.5;
      for (int j = i + 1; j < n; ++j) {
        const double pij = p_[idx(i, j)], pji = p_[idx(j, i)];
        if (pij < 0 || pij > 1 || pji < 0 || pji > 1)
          throw std::invalid_argument("pairwise: entry outside [0,1]");
        if (std::abs(pij + pji - 1.0) > 1e-12)
          throw std::invalid_argument("pairwise: p_ij + p_ji != 1");
      }
    }
  }

  static PairwiseMatrix dirac(const Permutation& sigma) {
    const int n = sigma.size();
    std::vector<double> p(static_cast<std::size_t>(n) * n, 0.5);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j)
          p[static_cast<std::size_t>(i) * n + j] = sigma(i) < sigma(j) ? 1.0 : 0.0;
    return PairwiseMatrix(n, std::move(p));
  }

  int size() const { return n_; }
  double operator()(int i, int j) const { return p_[idx(i, j)]; }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * n_ + j;
  }
  int n_;
  std::vector<double> p_;
};

inline PairwiseMatrix empirical_pairwise(const RankingSample& sample) {
  if (sample.empty())
    throw std::invalid_argument("empirical_pairwise: empty sample");
  const int n = sample.item_count();
  std::vector<double> wins(static_cast<std::size_t>(n) * n, 0.0);
  const double total = sample.total_weight();
  for (std::size_t s = 0; s < sample.size(); ++s) {
    const Permutation& sigma = sample.rankings[s];
    const double w = sample.weight(s);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && sigma(i) < sigma(j))
          wins[static_cast<std::size_t>(i) * n + j] += w;
  }
  // One division at the end, with p_ji derived from p_ij so the complement
  // identity holds exactly despite accumulation rounding.
  std::vector<double> p(static_cast<std::size_t>(n) * n, 0.5);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double pij = std::min(
          1.0, std::max(0.0, wins[static_cast<std::size_t>(i) * n + j] / total));
      p[static_cast<std::size_t>(i) * n + j] = pij;
      p[static_cast<std::size_t>(j) * n + i] = 1.0 - pij;
    }
  return PairwiseMatrix(n, std::move(p));
}

enum class Transitivity { SST, STWithTies, NotST };

inline std::string transitivity_name(Transitivity t) {
  switch (t) {
    case Transitivity::SST: return "SST";
    case Transitivity::STWithTies: return "ST_with_ties";
    case Transitivity::NotST: return "NotST";
  }
  return "?";
}

/// Checks stochastic transitivity of the p >= 1/2 relation over all ordered
/// triples. Entries within `tie_tolerance` of 1/2 count as >= 1/2 (and as
/// ties for the strictness check); default is exact comparison.
inline Transitivity transitivity_status(const PairwiseMatrix& m,
                                        double tie_tolerance = 0.0) {
  const int n = m.size();
  auto geq_half = [&](int i, int j) { return m(i, j) >= 0.5 - tie_tolerance; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        if (geq_half(i, j) && geq_half(j, k) && !geq_half(i, k))
          return Transitivity::NotST;
      }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - 0.5) <= tie_tolerance)
        return Transitivity::STWithTies;
  return Transitivity::SST;
}

/// Number of item triples whose strict-majority tournament (p > 1/2 wins) is
/// a directed 3-cycle. Triples containing a tie are never cyclic.
inline int count_cycles(const PairwiseMatrix& m, double tie_tolerance = 0.0) {
  const int n = m.size();
  auto wins = [&](int i, int j) { return m(i, j) > 0.5 + tie_tolerance; };
  int cycles = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        if ((wins(i, j) && wins(j, k) && wins(k, i)) ||
            (wins(j, i) && wins(k, j) && wins(i, k)))
          ++cycles;
      }
  return cycles;
}

struct MonotonicityCheck {
  bool holds;
  double h;      // min_{i<j} |p_ij - 1/2|
  double s;      // max over distinct pairs of |p_ij - p_kl|
  double bound;  // h / s (infinite when s == 0)
};

/// The sufficient condition for global monotonicity of Kendall depth:
/// C(n,2) < h/s. Requires an SST matrix.
inline MonotonicityCheck global_monotonicity_condition(const PairwiseMatrix& m) {
  if (transitivity_status(m) != Transitivity::SST)
    throw std::invalid_argument("global_monotonicity_condition: matrix not SST");
  const int n = m.size();
  double h = std::numeric_limits<double>::infinity();
  double s = 0;
  std::vector<double> upper;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      upper.push_back(m(i, j));
      h = std::min(h, std::abs(m(i, j) - 0.5));
    }
  for (std::size_t a = 0; a < upper.size(); ++a)
    for (std::size_t b = a + 1; b < upper.size(); ++b)
      s = std::max(s, std::abs(upper[a] - upper[b]));
  MonotonicityCheck out{};
  out.h = h;
  out.s = s;
  if (s == 0) {
    out.bound = std::numeric_limits<double>::infinity();
    out.holds = true;
  } else {
    out.bound = h / s;
    out.holds = max_distance(Metric::KendallTau, n) < out.bound;
  }
  return out;
}

}  // namespace rankdepth
