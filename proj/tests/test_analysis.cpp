#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "scpir/analysis.hpp"
#include "scpir/json_io.hpp"
#include "scpir/rng.hpp"

using namespace scpir;

namespace {

std::vector<BitVec> random_messages(int count, std::uint64_t len, std::uint64_t seed) {
  std::vector<BitVec> messages;
  for (int m = 1; m <= count; ++m) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(m)}));
    messages.push_back(random_bits(rng, len));
  }
  return messages;
}

}  // namespace

TEST_CASE("closed-form download costs") {
  CHECK(theoretical_cost(2, 2) == Rational(3, 2));
  CHECK(theoretical_cost(2, 3) == Rational(7, 4));
  CHECK(theoretical_cost(3, 2) == Rational(4, 3));
  CHECK(theoretical_cost(3, 3) == Rational(13, 9));
  for (int k = 1; k <= 8; ++k) CHECK(theoretical_cost(1, k) == Rational(k));
  CHECK_THROWS_AS(theoretical_cost(0, 2), std::invalid_argument);
}

TEST_CASE("tradeoff curve grid points and hull flags") {
  auto curve32 = tradeoff_curve(3, 2);
  REQUIRE(curve32.size() == 3);
  CHECK(curve32[0].mu == Rational(1, 3));
  CHECK(curve32[0].cost == Rational(2));
  CHECK(curve32[1].mu == Rational(2, 3));
  CHECK(curve32[1].cost == Rational(3, 2));
  CHECK(curve32[2].mu == Rational(1));
  CHECK(curve32[2].cost == Rational(4, 3));
  for (const TradeoffPoint& p : curve32) CHECK(p.on_hull);

  auto curve33 = tradeoff_curve(3, 3);
  CHECK(curve33[0].cost == Rational(3));
  CHECK(curve33[1].cost == Rational(7, 4));
  CHECK(curve33[2].cost == Rational(13, 9));
  for (const TradeoffPoint& p : curve33) CHECK(p.on_hull);

  // one message: the curve is flat at cost 1
  for (const TradeoffPoint& p : tradeoff_curve(4, 1)) {
    CHECK(p.cost == Rational(1));
    CHECK(p.on_hull);
  }
}

TEST_CASE("achieved points are convex in mu") {
  for (int n = 2; n <= 8; ++n) {
    for (int k = 1; k <= 6; ++k) {
      auto curve = tradeoff_curve(n, k);
      for (std::size_t i = 0; i + 2 < curve.size(); ++i) {
        Rational s1 = (curve[i + 1].cost - curve[i].cost) /
                      (curve[i + 1].mu - curve[i].mu);
        Rational s2 = (curve[i + 2].cost - curve[i + 1].cost) /
                      (curve[i + 2].mu - curve[i + 1].mu);
        CHECK(s1 <= s2);
      }
    }
  }
}

TEST_CASE("memory sharing solves the mixing weight exactly") {
  MemShareSpec spec = memory_share(3, 2, Rational(1, 2));
  CHECK(spec.t_low == 1);
  CHECK(spec.t_high == 2);
  CHECK(spec.alpha == Rational(1, 2));
  CHECK(spec.cost == Rational(7, 4));  // (2 + 3/2) / 2
  CHECK(spec.part1_len == 12);
  CHECK(spec.part2_len == 12);
  CHECK(spec.part1_len % spec.unit_low == 0);
  CHECK(spec.part2_len % spec.unit_high == 0);

  // grid points collapse to a single scheme
  MemShareSpec grid = memory_share(3, 2, Rational(2, 3));
  CHECK(grid.alpha == Rational(1));
  CHECK(grid.t_low == 2);
  CHECK(grid.t_high == 2);
  CHECK(grid.cost == Rational(3, 2));
  CHECK(grid.part2_len == 0);

  MemShareSpec full = memory_share(3, 2, Rational(1));
  CHECK(full.cost == Rational(4, 3));

  CHECK_THROWS_AS(memory_share(3, 2, Rational(1, 4)), std::invalid_argument);
  CHECK_THROWS_AS(memory_share(3, 2, Rational(7, 6)), std::invalid_argument);
}

TEST_CASE("memory sharing mixes storage budgets exactly across a mu sweep") {
  for (int n = 2; n <= 7; ++n) {
    for (int k = 1; k <= 4; ++k) {
      for (std::int64_t den = 2; den <= 12; ++den) {
        for (std::int64_t num = 1; num <= den; ++num) {
          Rational mu(num, den);
          if (mu < Rational(1, n) || mu > Rational(1)) continue;
          MemShareSpec spec = memory_share(n, k, mu);
          CHECK(spec.alpha * Rational(spec.t_low, n) +
                    (Rational(1) - spec.alpha) * Rational(spec.t_high, n) ==
                mu);
          CHECK(spec.alpha >= Rational(0));
          CHECK(spec.alpha <= Rational(1));
          CHECK(spec.cost == spec.alpha * theoretical_cost(spec.t_low, k) +
                                 (Rational(1) - spec.alpha) *
                                     theoretical_cost(spec.t_high, k));
          CHECK(spec.part1_len % spec.unit_low == 0);
          if (spec.part2_len > 0) CHECK(spec.part2_len % spec.unit_high == 0);
        }
      }
    }
  }
}

TEST_CASE("composite retrieval achieves the mixed cost end to end") {
  MemShareSpec spec = memory_share(3, 2, Rational(1, 2));
  std::uint64_t total = spec.part1_len + spec.part2_len;
  auto messages = random_messages(2, total, 404);
  CompositeReport report =
      composite_retrieval(3, 2, Rational(1, 2), messages, 1, 17);
  CHECK(report.decoded == messages[0]);
  CHECK(report.cost == Rational(7, 4));
  CHECK(report.downloaded_bits == 42);  // 4 rounds at t=1 (24) + 1 round at t=2 (18)
  CHECK(report.desired_bits == 24);
  CHECK(report.part1.rounds == 4);
  CHECK(report.part2.rounds == 1);

  // theta sweep at an uneven mixture
  MemShareSpec spec2 = memory_share(4, 3, Rational(3, 7));
  auto messages2 = random_messages(3, spec2.part1_len + spec2.part2_len, 88);
  for (int theta = 1; theta <= 3; ++theta) {
    CompositeReport r = composite_retrieval(4, 3, Rational(3, 7), messages2, theta, 9);
    CHECK(r.decoded == messages2[theta - 1]);
    CHECK(r.cost == spec2.cost);
  }
}

TEST_CASE("composite retrieval at a grid point matches the plain scheme") {
  Params p = make_params(3, 2, 2);
  auto messages = random_messages(2, p.message_len, 7);
  RetrievalReport plain = run_retrieval(p, messages, 1, 77);
  CompositeReport composite =
      composite_retrieval(3, 2, Rational(2, 3), messages, 1, 77);
  CHECK(composite.cost == plain.cost);
  CHECK(composite.decoded == plain.decoded);
  CHECK(composite.downloaded_bits == plain.downloaded_bits);
}

TEST_CASE("composite retrieval on all-zero messages") {
  MemShareSpec spec = memory_share(3, 2, Rational(1, 2));
  std::vector<BitVec> zeros(2, BitVec(spec.part1_len + spec.part2_len, 0));
  CompositeReport report = composite_retrieval(3, 2, Rational(1, 2), zeros, 2, 5);
  CHECK(report.decoded == BitVec(24, 0));
}

TEST_CASE("composite retrieval validates message sizing") {
  auto messages = random_messages(2, 23, 1);
  CHECK_THROWS_AS(composite_retrieval(3, 2, Rational(1, 2), messages, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("baseline between the storage extremes") {
  CHECK(baseline_extremes(3, 2, Rational(2, 3)) == Rational(5, 3));
  CHECK(baseline_extremes(3, 2, Rational(1, 3)) == Rational(2));
  CHECK(baseline_extremes(3, 2, Rational(1)) == Rational(4, 3));
  CHECK(baseline_extremes(3, 3, Rational(2, 3)) == Rational(20, 9));
  CHECK_THROWS_AS(baseline_extremes(3, 2, Rational(1, 4)), std::invalid_argument);
}

TEST_CASE("interior grid points strictly beat extreme memory sharing") {
  auto rows32 = improvement_report(3, 2);
  REQUIRE(rows32.size() == 1);
  CHECK(rows32[0].scheme_cost == Rational(3, 2));
  CHECK(rows32[0].baseline_cost == Rational(5, 3));
  CHECK(rows32[0].strict);

  auto rows33 = improvement_report(3, 3);
  CHECK(rows33[0].scheme_cost == Rational(7, 4));
  CHECK(rows33[0].baseline_cost == Rational(20, 9));
  CHECK(rows33[0].strict);

  for (int n = 3; n <= 8; ++n) {
    for (int k = 2; k <= 6; ++k) {
      for (const ImprovementRow& row : improvement_report(n, k)) {
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(row.storage_level);
        CHECK(row.strict);
      }
    }
  }

  // K=1 is the flat-curve edge: no strict improvement anywhere
  for (const ImprovementRow& row : improvement_report(5, 1)) {
    CHECK_FALSE(row.strict);
    CHECK(row.scheme_cost == row.baseline_cost);
  }
}

TEST_CASE("simulated costs agree with the closed form") {
  for (int n = 2; n <= 4; ++n) {
    for (int k = 1; k <= 3; ++k) {
      for (int t = 1; t <= n; ++t) {
        Params p = make_params(n, k, t);
        auto messages = random_messages(k, p.message_len, 50 + n);
        RetrievalReport report = run_retrieval(p, messages, 1, 3);
        CHECK(report.cost == theoretical_cost(t, k));
      }
    }
  }
}

TEST_CASE("curve export formats") {
  std::string csv = curve_csv(3, 2);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,mu_num,mu_den,cost_num,cost_den,cost_decimal,on_hull,baseline_decimal");
  std::vector<std::string> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(line);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].substr(0, 10) == "1,1,3,2,1,");
  CHECK(rows[1].substr(0, 10) == "2,2,3,3,2,");
  CHECK(rows[2].substr(0, 10) == "3,1,1,4,3,");

  json curve = curve_json(3, 3);
  CHECK(curve.at("points").size() == 3);
  CHECK(curve.at("points")[1].at("cost").at("string") == "7/4");
  CHECK(curve.at("points")[1].at("on_hull") == true);
}
