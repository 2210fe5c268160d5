#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rankdepth/models.hpp"

using namespace rankdepth;

TEST_CASE("mallows normalizer") {
  CHECK(mallows_normalizer(3, 1.0) == doctest::Approx(6.0));
  CHECK(mallows_normalizer(1, 0.3) == doctest::Approx(1.0));
  // oracle: sum of phi^{d_tau(id, sigma)} over S_3
  CHECK(mallows_normalizer(3, 0.5) == doctest::Approx(2.625));
  for (double phi : {0.2, 0.7, 1.0}) {
    for (int n = 1; n <= 6; ++n) {
      double z = 0;
      for_each_permutation(n, [&](const Permutation& sigma) {
        z += std::pow(phi, distance(Permutation::identity(n), sigma,
                                    Metric::KendallTau));
      });
      CHECK(mallows_normalizer(n, phi) == doctest::Approx(z));
    }
  }
  CHECK_THROWS_AS(mallows_normalizer(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(mallows_normalizer(3, 1.5), std::invalid_argument);
}

TEST_CASE("mallows pmf") {
  const MallowsParams uniform(Permutation::identity(3), 1.0);
  for_each_permutation(3, [&](const Permutation& sigma) {
    CHECK(mallows_pmf(uniform, sigma) == doctest::Approx(1.0 / 6.0));
  });

  const MallowsParams half(Permutation::identity(2), 0.5);
  CHECK(mallows_pmf(half, Permutation::identity(2)) == doctest::Approx(2.0 / 3.0));
  CHECK(mallows_pmf(half, Permutation({1, 0})) == doctest::Approx(1.0 / 3.0));

  std::mt19937_64 rng(5);
  const MallowsParams theta(oracles::random_permutation(5, rng), 0.6);
  double total = 0;
  for_each_permutation(5, [&](const Permutation& sigma) {
    total += mallows_pmf(theta, sigma);
    CHECK(mallows_pmf(theta, sigma) <= mallows_pmf(theta, theta.center) + 1e-15);
  });
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("mallows pmf depends only on distance to center") {
  std::mt19937_64 rng(8);
  const MallowsParams theta(oracles::random_permutation(4, rng), 0.45);
  std::map<double, double> by_distance;
  for_each_permutation(4, [&](const Permutation& sigma) {
    const double d = distance(theta.center, sigma, Metric::KendallTau);
    const double p = mallows_pmf(theta, sigma);
    auto [it, inserted] = by_distance.emplace(d, p);
    if (!inserted) CHECK(it->second == doctest::Approx(p));
  });
}

TEST_CASE("mallows pairwise closed form vs brute force") {
  const MallowsParams two(Permutation::identity(2), 0.5);
  CHECK(mallows_pairwise(two)(0, 1) == doctest::Approx(2.0 / 3.0));

  std::mt19937_64 rng(13);
  for (int n = 2; n <= 6; ++n) {
    for (double phi : {0.3, 0.5, 0.9}) {
      const MallowsParams theta(oracles::random_permutation(n, rng), phi);
      const auto closed = mallows_pairwise(theta);
      const auto brute = oracles::pairwise_from_explicit(explicit_from(theta));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          CHECK(closed(i, j) == doctest::Approx(brute(i, j)).epsilon(1e-10));
    }
  }

  // uniform limit
  const auto flat = mallows_pairwise(MallowsParams(Permutation::identity(4), 1.0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(flat(i, j) == doctest::Approx(0.5));
}

TEST_CASE("plackett-luce pmf and pairwise") {
  const PlackettLuceParams equal({1, 1, 1});
  for_each_permutation(3, [&](const Permutation& sigma) {
    CHECK(plackett_luce_pmf(equal, sigma) == doctest::Approx(1.0 / 6.0));
  });

  const PlackettLuceParams two({2, 1});
  CHECK(plackett_luce_pmf(two, Permutation::identity(2)) ==
        doctest::Approx(2.0 / 3.0));
  CHECK(plackett_luce_pairwise(two)(0, 1) == doctest::Approx(2.0 / 3.0));

  CHECK_THROWS_AS(PlackettLuceParams({1.0, 0.0}), std::invalid_argument);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> wdist(0.2, 3.0);
  for (int n = 2; n <= 6; ++n) {
    std::vector<double> w(static_cast<std::size_t>(n));
    for (auto& v : w) v = wdist(rng);
    const PlackettLuceParams params(w);
    double total = 0;
    for_each_permutation(n, [&](const Permutation& sigma) {
      total += plackett_luce_pmf(params, sigma);
    });
    CHECK(total == doctest::Approx(1.0));
    const auto closed = plackett_luce_pairwise(params);
    const auto brute = oracles::pairwise_from_explicit(explicit_from(params));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(closed(i, j) == doctest::Approx(brute(i, j)).epsilon(1e-10));
  }
}

TEST_CASE("plackett-luce pairwise with distinct weights is SST") {
  const PlackettLuceParams params({5.0, 3.0, 2.0, 1.0, 0.5});
  CHECK(transitivity_status(plackett_luce_pairwise(params)) == Transitivity::SST);
}

TEST_CASE("explicit_from") {
  const RankingSample dirac({Permutation({1, 0, 2})});
  const auto d = explicit_from(dirac);
  CHECK(d.entries().size() == 1);
  CHECK(d.pmf(Permutation({1, 0, 2})) == doctest::Approx(1.0));

  const MallowsParams theta(Permutation::identity(3), 0.4);
  const auto e = explicit_from(theta);
  for (const auto& [sigma, p] : e.entries())
    CHECK(p == doctest::Approx(mallows_pmf(theta, sigma)));
}

TEST_CASE("samplers deterministic given seed") {
  const MallowsParams theta(Permutation::identity(5), 0.6);
  CHECK(sample_mallows(theta, 50, 99).rankings ==
        sample_mallows(theta, 50, 99).rankings);
  const PlackettLuceParams pl({3, 2, 1});
  CHECK(sample_plackett_luce(pl, 50, 42).rankings ==
        sample_plackett_luce(pl, 50, 42).rankings);
  // RIM path (n > 8) deterministic too
  const MallowsParams big(Permutation::identity(10), 0.8);
  CHECK(sample_mallows(big, 20, 7).rankings == sample_mallows(big, 20, 7).rankings);
}

TEST_CASE("mallows sampler frequencies: uniform and n=2") {
  const MallowsParams uniform(Permutation::identity(3), 1.0);
  const auto s = sample_mallows(uniform, 60000, 1234);
  std::map<Permutation, int> counts;
  for (const auto& r : s.rankings) counts[r]++;
  CHECK(counts.size() == 6);
  for (const auto& [sigma, c] : counts) CHECK(std::abs(c - 10000) < 300);

  const MallowsParams half(Permutation::identity(2), 0.5);
  const auto s2 = sample_mallows(half, 30000, 77);
  int at_center = 0;
  for (const auto& r : s2.rankings) at_center += r == half.center;
  CHECK(std::abs(at_center / 30000.0 - 2.0 / 3.0) < 0.01);
}

TEST_CASE("sampler goodness of fit, n=4") {
  const std::size_t n_draws = 100000;
  const MallowsParams theta(Permutation({2, 0, 3, 1}), 0.55);
  const auto exact = explicit_from(theta);
  const auto s = sample_mallows(theta, n_draws, 2024);
  std::map<Permutation, int> counts;
  for (const auto& r : s.rankings) counts[r]++;
  for (const auto& [sigma, p] : exact.entries()) {
    const double freq = counts[sigma] / static_cast<double>(n_draws);
    const double band = 4.0 * std::sqrt(p * (1 - p) / static_cast<double>(n_draws));
    CHECK(std::abs(freq - p) < band + 1e-9);
  }
}

TEST_CASE("RIM path matches dense path in distribution") {
  // same model sampled via explicit inverse-CDF (n<=8 path) and via RIM
  // directly; compare per-cell frequencies
  const int n = 5;
  const double phi = 0.5;
  const std::size_t n_draws = 60000;
  Rng rng(31);
  std::map<Permutation, int> counts;
  for (std::size_t i = 0; i < n_draws; ++i)
    counts[detail::sample_mallows_rim(n, phi, rng)]++;
  const auto exact = explicit_from(MallowsParams(Permutation::identity(n), phi));
  for (const auto& [sigma, p] : exact.entries()) {
    const double freq = counts[sigma] / static_cast<double>(n_draws);
    const double band = 5.0 * std::sqrt(p * (1 - p) / static_cast<double>(n_draws));
    CHECK(std::abs(freq - p) < band + 1e-9);
  }
}

TEST_CASE("plackett-luce sampler frequencies") {
  const PlackettLuceParams params({2.5, 1.5, 1.0});
  const auto exact = explicit_from(params);
  const std::size_t n_draws = 60000;
  const auto s = sample_plackett_luce(params, n_draws, 55);
  std::map<Permutation, int> counts;
  for (const auto& r : s.rankings) counts[r]++;
  for (const auto& [sigma, p] : exact.entries()) {
    const double freq = counts[sigma] / static_cast<double>(n_draws);
    const double band = 4.0 * std::sqrt(p * (1 - p) / static_cast<double>(n_draws));
    CHECK(std::abs(freq - p) < band + 1e-9);
  }
}
