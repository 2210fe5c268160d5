#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "rankdepth/io.hpp"

using namespace rankdepth;

TEST_CASE("parse ranks and ordering formats") {
  std::istringstream in("1,2,3\n3,2,1\n");
  const auto s = parse_rankings(in, RankingFormat::Ranks, true);
  REQUIRE(s.size() == 2);
  CHECK(s.rankings[0] == Permutation::identity(3));
  CHECK(s.rankings[1] == Permutation::reversal(3));

  // the same two rows are self-inverse, so ordering parses identically
  std::istringstream in2("1,2,3\n3,2,1\n");
  const auto s2 = parse_rankings(in2, RankingFormat::Ordering, true);
  CHECK(s2.rankings == s.rankings);

  // a non-involution differs between the formats
  std::istringstream in3("2,3,1\n");
  const auto ranks = parse_rankings(in3, RankingFormat::Ranks, true);
  std::istringstream in4("2,3,1\n");
  const auto ordering = parse_rankings(in4, RankingFormat::Ordering, true);
  CHECK(ranks.rankings[0] == Permutation({1, 2, 0}));
  CHECK(ordering.rankings[0] == Permutation({2, 0, 1}));
}

TEST_CASE("parse errors name the row") {
  std::istringstream bad("1,1,3\n");
  CHECK_THROWS_WITH_AS(parse_rankings(bad), doctest::Contains("row 1"),
                       ParseError);
  std::istringstream ragged("1,2,3\n1,2\n");
  CHECK_THROWS_WITH_AS(parse_rankings(ragged), doctest::Contains("row 2"),
                       ParseError);
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_rankings(empty), ParseError);
}

TEST_CASE("header detection") {
  std::istringstream in("a,b,c\n1,2,3\n2,1,3\n");
  const auto s = parse_rankings(in);
  CHECK(s.size() == 2);
  REQUIRE(s.item_labels.size() == 3);
  CHECK(s.item_labels[0] == "a");
}

TEST_CASE("round trip parse(emit(sample)) == sample") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 30; ++rep) {
    const auto s = oracles::random_sample(3 + rep % 5, 12, rng);
    for (auto format : {RankingFormat::Ranks, RankingFormat::Ordering}) {
      std::ostringstream out;
      emit_rankings(out, s, format, true);
      std::istringstream in(out.str());
      CHECK(parse_rankings(in, format, true).rankings == s.rankings);
    }
  }
}

TEST_CASE("pairwise matrix round trip") {
  std::mt19937_64 rng(7);
  const auto m = empirical_pairwise(oracles::random_sample(4, 9, rng));
  std::ostringstream out;
  emit_pairwise(out, m);
  std::istringstream in(out.str());
  const auto back = parse_pairwise(in);
  REQUIRE(back.size() == 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(back(i, j) == doctest::Approx(m(i, j)));
}

TEST_CASE("trace and dd csv headers") {
  std::mt19937_64 rng(9);
  const auto s = oracles::random_sample(4, 10, rng);
  const auto trim = trim_to_sst(s);
  std::ostringstream trace_out;
  emit_trim_trace(trace_out, trim.trace);
  CHECK(trace_out.str().find("iteration,") == 0);

  const auto dd = dd_plot(s, s, Metric::KendallTau);
  std::ostringstream dd_out;
  emit_dd_plot(dd_out, dd);
  CHECK(dd_out.str().find("ranking,depth1,depth2,origin") == 0);
}
