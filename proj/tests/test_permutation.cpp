#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rankdepth/permutation.hpp"

using namespace rankdepth;

TEST_CASE("permutation validation") {
  CHECK_THROWS_AS(Permutation({0, 0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation(std::vector<int>{}), std::invalid_argument);
  CHECK(Permutation({2, 0, 1}).size() == 3);
}

TEST_CASE("compose and inverse") {
  const auto id3 = Permutation::identity(3);
  const Permutation sigma({1, 2, 0});
  CHECK(compose(sigma, id3) == sigma);
  CHECK(compose(sigma, sigma.inverse()) == id3);
  CHECK(sigma.inverse() == Permutation({2, 0, 1}));
  CHECK(sigma.inverse().inverse() == sigma);
  CHECK(compose(Permutation({1, 2, 0}), Permutation({2, 0, 1})) == id3);
  CHECK(id3.inverse() == id3);
  CHECK_THROWS_AS(compose(id3, Permutation::identity(4)), std::invalid_argument);
}

TEST_CASE("distance basics") {
  const auto id4 = Permutation::identity(4);
  CHECK(distance(id4, Permutation::reversal(4), Metric::KendallTau) == 6);
  const Permutation sigma({2, 0, 3, 1});
  CHECK(distance(sigma, sigma, Metric::Hamming) == 0);
  CHECK(distance(Permutation({0, 1, 2}), Permutation({1, 0, 2}),
                 Metric::SpearmanFootrule) == 2);
  CHECK(distance(Permutation::identity(3), Permutation({1, 0, 2}),
                 Metric::SpearmanRho) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(distance(id4, Permutation::identity(3), Metric::KendallTau),
                  std::invalid_argument);
}

TEST_CASE("kendall fast path matches brute force") {
  std::mt19937_64 rng(11);
  for (int n : {2, 3, 5, 8, 12}) {
    for (int rep = 0; rep < 50; ++rep) {
      const auto a = oracles::random_permutation(n, rng);
      const auto b = oracles::random_permutation(n, rng);
      CHECK(distance(a, b, Metric::KendallTau) ==
            oracles::kendall_bruteforce(a, b));
    }
  }
}

TEST_CASE("max_distance values and attainment") {
  CHECK(max_distance(Metric::KendallTau, 12) == 66);
  CHECK(max_distance(Metric::Hamming, 1) == 0);
  CHECK(max_distance(Metric::SpearmanFootrule, 4) == 8);
  CHECK_THROWS_AS(max_distance(Metric::KendallTau, 0), std::invalid_argument);

  // brute-force maximum over S_n x S_n, attained at (identity, reversal)
  for (int n = 1; n <= 6; ++n) {
    for (Metric m : {Metric::KendallTau, Metric::SpearmanRho,
                     Metric::SpearmanFootrule, Metric::Hamming}) {
      double best = 0;
      // right-invariance reduces the scan to distances from the identity
      for_each_permutation(n, [&](const Permutation& sigma) {
        best = std::max(best, distance(Permutation::identity(n), sigma, m));
      });
      CHECK(max_distance(m, n) == doctest::Approx(best));
      // reversal attains the max except for Hamming at odd n (it fixes the
      // middle item); a cyclic shift attains Hamming's max instead
      if (m == Metric::Hamming) {
        std::vector<int> shifted(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
          shifted[static_cast<std::size_t>(i)] = (i + 1) % n;
        CHECK(distance(Permutation::identity(n), Permutation(shifted), m) ==
              doctest::Approx(max_distance(m, n)));
      } else {
        CHECK(distance(Permutation::identity(n), Permutation::reversal(n), m) ==
              doctest::Approx(max_distance(m, n)));
      }
    }
  }
}

TEST_CASE("right-invariance, exhaustive n<=4 and randomized n=8") {
  for (Metric m : {Metric::KendallTau, Metric::SpearmanRho,
                   Metric::SpearmanFootrule, Metric::Hamming}) {
    for_each_permutation(4, [&](const Permutation& a) {
      for_each_permutation(4, [&](const Permutation& b) {
        for_each_permutation(4, [&](const Permutation& pi) {
          CHECK(distance(compose(a, pi), compose(b, pi), m) ==
                doctest::Approx(distance(a, b, m)));
        });
      });
    });
  }
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    const auto a = oracles::random_permutation(8, rng);
    const auto b = oracles::random_permutation(8, rng);
    const auto pi = oracles::random_permutation(8, rng);
    for (Metric m : {Metric::KendallTau, Metric::SpearmanRho,
                     Metric::SpearmanFootrule, Metric::Hamming})
      CHECK(distance(compose(a, pi), compose(b, pi), m) ==
            doctest::Approx(distance(a, b, m)));
  }
}

TEST_CASE("triangle inequality on random triples") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 2 + static_cast<int>(rep % 7);
    const auto a = oracles::random_permutation(n, rng);
    const auto b = oracles::random_permutation(n, rng);
    const auto c = oracles::random_permutation(n, rng);
    for (Metric m : {Metric::KendallTau, Metric::SpearmanRho,
                     Metric::SpearmanFootrule, Metric::Hamming})
      CHECK(distance(a, c, m) <= distance(a, b, m) + distance(b, c, m) + 1e-12);
  }
}

TEST_CASE("kendall reversal complement") {
  // d(sigma, sigma') + d(reversed sigma, sigma') = C(n,2)
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(rep % 6);
    const auto a = oracles::random_permutation(n, rng);
    const auto b = oracles::random_permutation(n, rng);
    CHECK(distance(a, b, Metric::KendallTau) +
              distance(a.reversed(), b, Metric::KendallTau) ==
          doctest::Approx(max_distance(Metric::KendallTau, n)));
  }
}
