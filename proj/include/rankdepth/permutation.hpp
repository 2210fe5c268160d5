#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankdepth {

/// A full ranking of n items: ranks[i] is the rank of item i, with smaller
/// rank meaning more preferred. Ranks are 0-based internally; I/O converts
/// to/from 1-based at the boundary.
class Permutation {
 public:
  explicit Permutation(std::vector<int> ranks) : ranks_(std::move(ranks)) {
    if (ranks_.empty()) throw std::invalid_argument("permutation: empty");
    std::vector<bool> seen(ranks_.size(), false);
    for (int r : ranks_) {
      if (r < 0 || r >= static_cast<int>(ranks_.size()) || seen[r])
        throw std::invalid_argument("permutation: not a bijection of {0..n-1}");
      seen[r] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> r(n);
    std::iota(r.begin(), r.end(), 0);
    return Permutation(std::move(r));
  }

  /// The reversal of the identity: item i gets rank n-1-i.
  static Permutation reversal(int n) {
    std::vector<int> r(n);
    for (int i = 0; i < n; ++i) r[i] = n - 1 - i;
    return Permutation(std::move(r));
  }

  int size() const { return static_cast<int>(ranks_.size()); }
  int operator()(int i) const { return ranks_[i]; }
  const std::vector<int>& ranks() const { return ranks_; }

  Permutation inverse() const {
    std::vector<int> inv(ranks_.size());
    for (int i = 0; i < size(); ++i) inv[ranks_[i]] = i;
    return Permutation(std::move(inv));
  }

  /// Item-wise rank reversal: sigma(i) -> n-1-sigma(i).
  Permutation reversed() const {
    std::vector<int> r(ranks_.size());
    for (int i = 0; i < size(); ++i) r[i] = size() - 1 - ranks_[i];
    return Permutation(std::move(r));
  }

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> ranks_;
};

/// compose(a, b)(i) = a(b(i)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("compose: size mismatch");
  std::vector<int> r(a.size());
  for (int i = 0; i < a.size(); ++i) r[i] = a(b(i));
  return Permutation(std::move(r));
}

enum class Metric { KendallTau, SpearmanRho, SpearmanFootrule, Hamming };

inline std::string metric_name(Metric m) {
  switch (m) {
    case Metric::KendallTau: return "kendall";
    case Metric::SpearmanRho: return "rho";
    case Metric::SpearmanFootrule: return "footrule";
    case Metric::Hamming: return "hamming";
  }
  return "?";
}

namespace detail {

// Merge-sort inversion count; scratch shared across recursion.
inline std::uint64_t count_inversions(std::vector<int>& v, std::vector<int>& tmp,
                                      std::size_t lo, std::size_t hi) {
  if (hi - lo <= 1) return 0;
  std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t inv = count_inversions(v, tmp, lo, mid) +
                      count_inversions(v, tmp, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[i] <= v[j]) tmp[k++] = v[i++];
    else {
      inv += mid - i;
      tmp[k++] = v[j++];
    }
  }
  while (i < mid) tmp[k++] = v[i++];
  while (j < hi) tmp[k++] = v[j++];
  std::copy(tmp.begin() + static_cast<std::ptrdiff_t>(lo),
            tmp.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

}  // namespace detail

/// Kendall tau distance via inversion counting, O(n log n).
inline std::uint64_t kendall_distance(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("distance: size mismatch");
  // Relabel positions by b's ordering; discordant item pairs become
  // inversions of the relabeled sequence of a-ranks.
  const Permutation binv = b.inverse();
  std::vector<int> seq(static_cast<std::size_t>(a.size()));
  for (int r = 0; r < a.size(); ++r) seq[static_cast<std::size_t>(r)] = a(binv(r));
  std::vector<int> tmp(seq.size());
  return detail::count_inversions(seq, tmp, 0, seq.size());
}

inline double distance(const Permutation& a, const Permutation& b, Metric m) {
  if (a.size() != b.size())
    throw std::invalid_argument("distance: size mismatch");
  const int n = a.size();
  switch (m) {
    case Metric::KendallTau:
      return static_cast<double>(kendall_distance(a, b));
    case Metric::SpearmanRho: {
      double s = 0;
      for (int i = 0; i < n; ++i) {
        const double d = a(i) - b(i);
        s += d * d;
      }
      return std::sqrt(s);
    }
    case Metric::SpearmanFootrule: {
      long s = 0;
      for (int i = 0; i < n; ++i) s += std::abs(a(i) - b(i));
      return static_cast<double>(s);
    }
    case Metric::Hamming: {
      int s = 0;
      for (int i = 0; i < n; ++i) s += a(i) != b(i);
      return static_cast<double>(s);
    }
  }
  throw std::logic_error("unreachable");
}

/// Diameter of the metric on S_n; attained at (identity, reversal).
inline double max_distance(Metric m, int n) {
  if (n < 1) throw std::invalid_argument("max_distance: n must be >= 1");
  switch (m) {
    case Metric::KendallTau:
      return static_cast<double>(n) * (n - 1) / 2.0;
    case Metric::SpearmanRho: {
      double s = 0;
      for (int i = 0; i < n; ++i) {
        const double d = n - 1 - 2 * i;
        s += d * d;
      }
      return std::sqrt(s);
    }
    case Metric::SpearmanFootrule:
      return static_cast<double>(static_cast<long>(n) * n / 2);
    case Metric::Hamming:
      return n == 1 ? 0.0 : static_cast<double>(n);
  }
  throw std::logic_error("unreachable");
}

inline double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Visits all of S_n in lexicographic order of the rank vector.
template <typename F>
void for_each_permutation(int n, F&& fn) {
  std::vector<int> r(static_cast<std::size_t>(n));
  std::iota(r.begin(), r.end(), 0);
  do {
    fn(Permutation(r));
  } while (std::next_permutation(r.begin(), r.end()));
}

}  // namespace rankdepth
