#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rankdepth/depth.hpp"
#include "rankdepth/pairwise.hpp"

using namespace rankdepth;

namespace {

PairwiseMatrix upper_matrix(int n, const std::vector<double>& upper) {
  std::vector<double> p(static_cast<std::size_t>(n) * n, 0.5);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      p[static_cast<std::size_t>(i) * n + j] = upper[k];
      p[static_cast<std::size_t>(j) * n + i] = 1.0 - upper[k];
      ++k;
    }
  return PairwiseMatrix(n, std::move(p));
}

}  // namespace

TEST_CASE("matrix invariants enforced") {
  CHECK_THROWS_AS(PairwiseMatrix(2, {0.5, 0.7, 0.2, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(PairwiseMatrix(2, {0.5, 1.2, -0.2, 0.5}), std::invalid_argument);
  const auto m = upper_matrix(3, {0.6, 0.7, 0.55});
  CHECK(m(0, 1) + m(1, 0) == doctest::Approx(1.0));
  CHECK(m(2, 2) == 0.5);
}

TEST_CASE("empirical pairwise basics") {
  const auto id2 = Permutation::identity(2);
  CHECK(empirical_pairwise(RankingSample({id2}))(0, 1) == doctest::Approx(1.0));
  CHECK(empirical_pairwise(RankingSample({id2, Permutation({1, 0})}))(0, 1) ==
        doctest::Approx(0.5));
  std::vector<Permutation> all;
  for_each_permutation(3, [&](const Permutation& p) { all.push_back(p); });
  const auto uniform = empirical_pairwise(RankingSample(all));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(uniform(i, j) == doctest::Approx(0.5));
  CHECK_THROWS_AS(empirical_pairwise(RankingSample{}), std::invalid_argument);
}

TEST_CASE("empirical pairwise of repeated ranking is Dirac") {
  std::mt19937_64 rng(23);
  const auto sigma = oracles::random_permutation(5, rng);
  const RankingSample s(std::vector<Permutation>(17, sigma));
  const auto m = empirical_pairwise(s);
  const auto d = PairwiseMatrix::dirac(sigma);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(m(i, j) == doctest::Approx(d(i, j)));
}

TEST_CASE("weighted empirical pairwise") {
  const RankingSample s({Permutation::identity(2), Permutation({1, 0})},
                        {3.0, 1.0});
  CHECK(empirical_pairwise(s)(0, 1) == doctest::Approx(0.75));
}

TEST_CASE("transitivity status") {
  std::mt19937_64 rng(41);
  CHECK(transitivity_status(PairwiseMatrix::dirac(
            oracles::random_permutation(4, rng))) == Transitivity::SST);
  // Condorcet cycle: p01 = p12 = p20 = 0.6
  const auto cycle = upper_matrix(3, {0.6, 0.4, 0.6});
  CHECK(transitivity_status(cycle) == Transitivity::NotST);
  CHECK(transitivity_status(upper_matrix(3, {0.5, 0.5, 0.5})) ==
        Transitivity::STWithTies);
  // epsilon treats near-ties as ties
  const auto near = upper_matrix(3, {0.501, 0.6, 0.55});
  CHECK(transitivity_status(near) == Transitivity::SST);
  CHECK(transitivity_status(near, 0.01) == Transitivity::STWithTies);
}

TEST_CASE("cycle counting") {
  std::mt19937_64 rng(19);
  CHECK(count_cycles(PairwiseMatrix::dirac(oracles::random_permutation(5, rng))) == 0);
  CHECK(count_cycles(upper_matrix(3, {0.6, 0.4, 0.6})) == 1);
  // tie in a triple blocks the cycle
  CHECK(count_cycles(upper_matrix(3, {0.5, 0.4, 0.6})) == 0);

  for (int rep = 0; rep < 100; ++rep) {
    const auto m = empirical_pairwise(oracles::random_sample(4, 9, rng));
    CHECK(count_cycles(m) == oracles::cycles_bruteforce(m));
  }
}

TEST_CASE("NotST iff cycles for empirical 3-item matrices") {
  // with n = 3 the majority tournament is the whole ST structure
  std::mt19937_64 rng(57);
  for (int n = 3; n <= 5; ++n) {
    for (int rep = 0; rep < 120; ++rep) {
      const auto m = empirical_pairwise(oracles::random_sample(n, 7, rng));
      if (count_cycles(m) > 0)
        CHECK(transitivity_status(m) == Transitivity::NotST);
    }
  }
  // the converse direction on n=3: NotST implies a cycle when no ties
  for (int rep = 0; rep < 200; ++rep) {
    const auto m = empirical_pairwise(oracles::random_sample(3, 7, rng));
    bool tie = false;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (m(i, j) == 0.5) tie = true;
    if (!tie && transitivity_status(m) == Transitivity::NotST)
      CHECK(count_cycles(m) > 0);
  }
}

TEST_CASE("global monotonicity condition") {
  const auto degenerate = upper_matrix(3, {0.8, 0.8, 0.8});
  const auto r1 = global_monotonicity_condition(degenerate);
  CHECK(r1.holds);
  CHECK(r1.s == 0);
  CHECK(std::isinf(r1.bound));

  const auto wide = upper_matrix(3, {0.9, 0.8, 0.7});
  const auto r2 = global_monotonicity_condition(wide);
  CHECK(r2.h == doctest::Approx(0.2));
  CHECK(r2.s == doctest::Approx(0.2));
  CHECK(r2.bound == doctest::Approx(1.0));
  CHECK_FALSE(r2.holds);

  const auto narrow = upper_matrix(3, {0.51, 0.509, 0.508});
  const auto r3 = global_monotonicity_condition(narrow);
  CHECK(r3.h == doctest::Approx(0.008));
  CHECK(r3.s == doctest::Approx(0.002));
  CHECK(r3.bound == doctest::Approx(4.0));
  CHECK(r3.holds);

  CHECK_THROWS_AS(global_monotonicity_condition(upper_matrix(3, {0.6, 0.4, 0.6})),
                  std::invalid_argument);
}

TEST_CASE("global monotonicity implies depth decreasing in distance") {
  // when the condition holds, Kendall depth is strictly decreasing in
  // d_tau(sigma*, .) -- exhaustive over S_3
  const auto m = upper_matrix(3, {0.51, 0.509, 0.508});
  REQUIRE(global_monotonicity_condition(m).holds);
  const auto star = deepest_and_least_deep(m).deepest;
  std::vector<std::pair<double, double>> pts;  // (distance, depth)
  for_each_permutation(3, [&](const Permutation& sigma) {
    pts.emplace_back(distance(star, sigma, Metric::KendallTau),
                     depth_kendall_from_pairwise(m, sigma));
  });
  for (const auto& a : pts)
    for (const auto& b : pts)
      if (a.first > b.first) CHECK(a.second < b.second);
}
