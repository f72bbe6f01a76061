#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "cfa/errors.hpp"
#include "cfa/scoring.hpp"

using Catch::Approx;
using cfa::ScoringSystem;

namespace {

std::vector<std::size_t> ranks_of(std::vector<double> scores) {
  const auto r = cfa::derive_rank(ScoringSystem("X", std::move(scores)));
  return {r.ranks().begin(), r.ranks().end()};
}

std::vector<double> curve_of(std::vector<double> scores) {
  const ScoringSystem s("X", std::move(scores));
  const auto c = cfa::rsc_curve(s, cfa::derive_rank(s));
  return {c.values().begin(), c.values().end()};
}

}  // namespace

TEST_CASE("normalize_scores maps the range onto [0,1]", "[scoring]") {
  const auto a = cfa::normalize_scores(std::vector{0.2, 0.6, 1.0});
  REQUIRE(a.values.size() == 3);
  CHECK(a.values[0] == 0.0);
  CHECK(a.values[1] == Approx(0.5));
  CHECK(a.values[2] == 1.0);
  CHECK(a.warnings.empty());

  const auto b = cfa::normalize_scores(std::vector{0.9, 0.1, 0.5, 0.3});
  CHECK(b.values[0] == 1.0);
  CHECK(b.values[1] == 0.0);
  CHECK(b.values[2] == Approx(0.5));
  CHECK(b.values[3] == Approx(0.25));
}

TEST_CASE("normalize_scores turns a constant vector into 0.5 with a warning", "[scoring]") {
  const auto n = cfa::normalize_scores(std::vector{0.7, 0.7, 0.7});
  CHECK(n.values == std::vector{0.5, 0.5, 0.5});
  CHECK(n.warnings.size() == 1);
}

TEST_CASE("normalize_scores rejects non-finite values by index", "[scoring]") {
  const std::vector bad{0.1, std::numeric_limits<double>::quiet_NaN(), 0.3};
  CHECK_THROWS_WITH(cfa::normalize_scores(bad), Catch::Matchers::ContainsSubstring("index 1"));
  CHECK_THROWS_AS(cfa::normalize_scores(std::vector<double>{}), cfa::InputError);
}

TEST_CASE("ScoringSystem rejects scores outside [0,1]", "[scoring]") {
  CHECK_THROWS_AS(ScoringSystem("A", {0.1, 1.2}), cfa::InputError);
  CHECK_THROWS_AS(ScoringSystem("A", {-0.1}), cfa::InputError);
  CHECK_THROWS_AS(ScoringSystem("", {0.1}), cfa::InputError);
}

TEST_CASE("derive_rank orders by descending score with index tie-break", "[scoring]") {
  CHECK(ranks_of({0.9, 0.1, 0.5}) == std::vector<std::size_t>{1, 3, 2});
  CHECK(ranks_of({0.5, 0.5, 0.5}) == std::vector<std::size_t>{1, 2, 3});
  CHECK(ranks_of({0.3, 0.8, 0.8, 0.1}) == std::vector<std::size_t>{3, 1, 2, 4});
}

TEST_CASE("RankFunction enforces a bijection onto 1..n", "[scoring]") {
  CHECK_NOTHROW(cfa::RankFunction({2, 1, 3}));
  CHECK_THROWS_AS(cfa::RankFunction({1, 1, 3}), cfa::InputError);
  CHECK_THROWS_AS(cfa::RankFunction({0, 1, 2}), cfa::InputError);
  CHECK_THROWS_AS(cfa::RankFunction({1, 2, 4}), cfa::InputError);
  CHECK(cfa::RankFunction({3, 1, 2}).inverse() == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("rsc_curve reads scores in rank order", "[scoring]") {
  CHECK(curve_of({0.9, 0.1, 0.5}) == std::vector{0.9, 0.5, 0.1});
  CHECK(curve_of({1.0, 0.6, 0.2}) == std::vector{1.0, 0.6, 0.2});
  CHECK(curve_of({0.4, 0.4, 0.8, 0.0}) == std::vector{0.8, 0.4, 0.4, 0.0});
}

TEST_CASE("rsc_curve rejects a rank function from another system", "[scoring]") {
  const ScoringSystem a("A", {0.9, 0.1, 0.5});
  const ScoringSystem b("B", {0.1, 0.9, 0.5});
  const ScoringSystem shorter("C", {0.1, 0.9});
  CHECK_THROWS_AS(cfa::rsc_curve(a, cfa::derive_rank(b)), cfa::InputError);
  CHECK_THROWS_AS(cfa::rsc_curve(shorter, cfa::derive_rank(a)), cfa::InputError);
}

TEST_CASE("RscCurve must be non-increasing", "[scoring]") {
  CHECK_NOTHROW(cfa::RscCurve({0.9, 0.9, 0.1}));
  CHECK_THROWS_AS(cfa::RscCurve({0.1, 0.9}), cfa::InputError);
  CHECK(cfa::RscCurve({0.9, 0.5}).at_rank(2) == 0.5);
}
