#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "scpir/combinatorics.hpp"
#include "scpir/rational.hpp"

using namespace scpir;

TEST_CASE("binom known values") {
  CHECK(binom(3, 2) == 3);
  CHECK(binom(1, -1) == 0);
  CHECK(binom(6, 3) == 20);
  CHECK(binom(0, 0) == 1);
  CHECK(binom(5, 0) == 1);
  CHECK(binom(5, 6) == 0);
}

TEST_CASE("binom satisfies the Pascal recurrence") {
  for (std::uint64_t n = 1; n <= 30; ++n) {
    for (std::int64_t k = 0; k <= static_cast<std::int64_t>(n); ++k) {
      CHECK(binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k));
    }
  }
}

TEST_CASE("binom reports overflow instead of wrapping") {
  CHECK_THROWS_AS(binom(80, 40), std::overflow_error);
}

TEST_CASE("checked arithmetic") {
  CHECK(checked_pow(2, 10) == 1024);
  CHECK(checked_pow(0, 0) == 1);
  CHECK(checked_pow(1, 1000) == 1);
  CHECK_THROWS_AS(checked_pow(2, 64), std::overflow_error);
  CHECK_THROWS_AS(checked_mul(std::uint64_t{1} << 63, 2), std::overflow_error);
  CHECK_THROWS_AS(checked_add(~std::uint64_t{0}, 1), std::overflow_error);
  CHECK(factorial(0) == 1);
  CHECK(factorial(4) == 24);
  CHECK(factorial(20) == 2432902008176640000ull);
  CHECK_THROWS_AS(factorial(21), std::overflow_error);
}

TEST_CASE("subset enumeration is lexicographic") {
  auto subsets = enum_subsets(3, 2);
  REQUIRE(subsets.size() == 3);
  CHECK(subsets[0].members == std::vector<int>{1, 2});
  CHECK(subsets[1].members == std::vector<int>{1, 3});
  CHECK(subsets[2].members == std::vector<int>{2, 3});
  for (std::uint64_t r = 0; r < subsets.size(); ++r) CHECK(subsets[r].rank == r);

  auto full = enum_subsets(3, 3);
  REQUIRE(full.size() == 1);
  CHECK(full[0].members == std::vector<int>{1, 2, 3});

  auto singles = enum_subsets(4, 1);
  REQUIRE(singles.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(singles[i].members == std::vector<int>{i + 1});

  CHECK_THROWS_AS(enum_subsets(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(enum_subsets(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(enum_subsets(0, 1), std::invalid_argument);
}

TEST_CASE("rank and unrank are inverse over the whole enumeration") {
  for (int universe = 1; universe <= 10; ++universe) {
    for (int size = 1; size <= universe; ++size) {
      auto subsets = enum_subsets(universe, size);
      CHECK(subsets.size() == binom(universe, size));
      for (const SubsetId& s : subsets) {
        CHECK(subset_rank(s.members, universe) == s.rank);
        CHECK(subset_unrank(s.rank, universe, size) == s.members);
      }
    }
  }
  CHECK_THROWS_AS(subset_unrank(3, 3, 2), std::invalid_argument);
}

TEST_CASE("the counting identity behind the per-stage formulas") {
  // (N-1)*C(N-2,t-2) == C(N-1,t-1)*(t-1)
  for (std::uint64_t n = 2; n <= 10; ++n) {
    for (std::uint64_t t = 2; t <= n; ++t) {
      CHECK((n - 1) * binom(n - 2, static_cast<std::int64_t>(t) - 2) ==
            binom(n - 1, static_cast<std::int64_t>(t) - 1) * (t - 1));
    }
  }
}

TEST_CASE("permutation rank/unrank roundtrip") {
  for (std::uint32_t size = 1; size <= 6; ++size) {
    std::set<std::vector<std::uint32_t>> seen;
    for (std::uint64_t r = 0; r < factorial(size); ++r) {
      auto perm = permutation_unrank(r, size);
      CHECK(permutation_rank(perm) == r);
      seen.insert(perm);
    }
    CHECK(seen.size() == factorial(size));
  }
  CHECK_THROWS_AS(permutation_unrank(24, 4), std::invalid_argument);
}

TEST_CASE("rational arithmetic is exact and canonical") {
  CHECK(Rational(1) + Rational(1, 2) == Rational(3, 2));
  CHECK(Rational(1, 3) + Rational(1, 9) + Rational(1) == Rational(13, 9));
  CHECK(Rational(3, 2) < Rational(5, 3));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(0, 5).den() == 1);
  CHECK((Rational(3, 4) * Rational(2, 3)) == Rational(1, 2));
  CHECK((Rational(7, 2) - Rational(3)) == Rational(1, 2));
  CHECK((Rational(5, 6) / Rational(5, 3)) == Rational(1, 2));
  CHECK(-Rational(2, 3) == Rational(-2, 3));
  CHECK(Rational(3, 2).str() == "3/2");
  CHECK(Rational(4).str() == "4");
}

TEST_CASE("rational error paths") {
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  const std::int64_t big = std::int64_t{1} << 62;
  CHECK_THROWS_AS(Rational(big) * Rational(4), std::overflow_error);
  CHECK_THROWS_AS(Rational(big, 3) + Rational(big, 5), std::overflow_error);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}
