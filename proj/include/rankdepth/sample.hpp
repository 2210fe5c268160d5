#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rankdepth/permutation.hpp"

namespace rankdepth {

/// A multiset of full rankings over the same item set, optionally weighted.
/// Empty weight vector means unit weight for every ranking.
struct RankingSample {
  std::vector<Permutation> rankings;
  std::vector<double> weights;           // empty or one per ranking, > 0
  std::vector<std::string> item_labels;  // empty or one per item

  RankingSample() = default;
  explicit RankingSample(std::vector<Permutation> rs,
                         std::vector<double> ws = {},
                         std::vector<std::string> labels = {})
      : rankings(std::move(rs)), weights(std::move(ws)),
        item_labels(std::move(labels)) {
    validate();
  }

  void validate() const {
    if (rankings.empty()) return;
    const int n = rankings.front().size();
    for (const auto& r : rankings)
      if (r.size() != n)
        throw std::invalid_argument("sample: rankings of mixed sizes");
    if (!weights.empty()) {
      if (weights.size() != rankings.size())
        throw std::invalid_argument("sample: weights length mismatch");
      for (double w : weights)
        if (!(w > 0)) throw std::invalid_argument("sample: nonpositive weight");
    }
    if (!item_labels.empty() && static_cast<int>(item_labels.size()) != n)
      throw std::invalid_argument("sample: item label count mismatch");
  }

  bool empty() const { return rankings.empty(); }
  std::size_t size() const { return rankings.size(); }
  int item_count() const {
    if (rankings.empty()) throw std::logic_error("sample: empty");
    return rankings.front().size();
  }
  double weight(std::size_t i) const {
    return weights.empty() ? 1.0 : weights[i];
  }
  double total_weight() const {
    if (weights.empty()) return static_cast<double>(rankings.size());
    double t = 0;
    for (double w : weights) t += w;
    return t;
  }

  /// Concatenation (used for contamination mixtures). Labels kept from *this.
  RankingSample concat(const RankingSample& other) const {
    RankingSample out = *this;
    if (!out.weights.empty() || !other.weights.empty()) {
      if (out.weights.empty()) out.weights.assign(out.rankings.size(), 1.0);
      for (std::size_t i = 0; i < other.rankings.size(); ++i)
        out.weights.push_back(other.weight(i));
    }
    out.rankings.insert(out.rankings.end(), other.rankings.begin(),
                        other.rankings.end());
    out.validate();
    return out;
  }
};

// Cap for operations that enumerate all of S_n (dense model tables,
// brute-force consensus); sparse supports carry no such limit.
constexpr int kMaxExplicitItems = 8;

/// Sparse distribution over S_n; the brute-force oracle backbone.
class ExplicitDistribution {
 public:
  ExplicitDistribution(int n, std::map<Permutation, double> entries)
      : n_(n), entries_(std::move(entries)) {
    if (n < 1)
      throw std::invalid_argument("explicit distribution: n out of range");
    double total = 0;
    for (const auto& [perm, p] : entries_) {
      if (perm.size() != n)
        throw std::invalid_argument("explicit distribution: size mismatch");
      if (p < 0)
        throw std::invalid_argument("explicit distribution: negative mass");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw std::invalid_argument("explicit distribution: masses must sum to 1");
  }

  int item_count() const { return n_; }
  const std::map<Permutation, double>& entries() const { return entries_; }

  double pmf(const Permutation& sigma) const {
    auto it = entries_.find(sigma);
    return it == entries_.end() ? 0.0 : it->second;
  }

  static ExplicitDistribution from_sample(const RankingSample& sample) {
    if (sample.empty())
      throw std::invalid_argument("explicit distribution: empty sample");
    std::map<Permutation, double> e;
    const double total = sample.total_weight();
    for (std::size_t i = 0; i < sample.size(); ++i)
      e[sample.rankings[i]] += sample.weight(i) / total;
    return ExplicitDistribution(sample.item_count(), std::move(e));
  }

 private:
  int n_;
  std::map<Permutation, double> entries_;
};

}  // namespace rankdepth
