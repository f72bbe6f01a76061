#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "cfa/errors.hpp"
#include "cfa/evaluation.hpp"
#include "cfa/selfcheck.hpp"

using Catch::Approx;
using cfa::LabelVector;

namespace {

std::vector<std::uint8_t> as_vector(const LabelVector& v) { return {v.labels().begin(), v.labels().end()}; }

}  // namespace

TEST_CASE("labels_from_scores thresholds inclusively at 0.5", "[evaluation]") {
  CHECK(as_vector(cfa::labels_from_scores(std::vector{0.9, 0.1})) == std::vector<std::uint8_t>{1, 0});
  CHECK(as_vector(cfa::labels_from_scores(std::vector{0.5})) == std::vector<std::uint8_t>{1});
  CHECK(as_vector(cfa::labels_from_scores(std::vector{0.49, 0.51, 0.50, 0.2})) ==
        std::vector<std::uint8_t>{0, 1, 1, 0});
  CHECK_THROWS_AS(cfa::labels_from_scores(std::vector{1.5}), cfa::InputError);
}

TEST_CASE("labels_from_ranks approves the P smallest fused ranks", "[evaluation]") {
  CHECK(as_vector(cfa::labels_from_ranks(std::vector{1.5, 3.0, 1.5}, 2)) == std::vector<std::uint8_t>{1, 0, 1});
  CHECK(as_vector(cfa::labels_from_ranks(std::vector{2.0, 2.0, 2.0, 5.0}, 2)) ==
        std::vector<std::uint8_t>{1, 1, 0, 0});
  CHECK(cfa::labels_from_ranks(std::vector{1.0, 2.0, 3.0}, 0).positive_count() == 0);
  CHECK(cfa::labels_from_ranks(std::vector{1.0, 2.0, 3.0}, 3).positive_count() == 3);
  CHECK_THROWS_AS(cfa::labels_from_ranks(std::vector{1.0, 2.0}, 3), cfa::InputError);
}

TEST_CASE("LabelVector counts positives and rejects other values", "[evaluation]") {
  CHECK(LabelVector({1, 0, 1, 1}).positive_count() == 3);
  CHECK_THROWS_AS(LabelVector({0, 2}), cfa::InputError);
}

TEST_CASE("accuracy is the matching fraction", "[evaluation]") {
  const LabelVector truth({1, 0, 1, 0});
  CHECK(cfa::accuracy(truth, truth) == 1.0);
  CHECK(cfa::accuracy(LabelVector({0, 1, 0, 1}), truth) == 0.0);
  CHECK_THROWS_AS(cfa::accuracy(LabelVector({1}), truth), cfa::InputError);
}

TEST_CASE("accuracy on a 138-instance test split", "[evaluation]") {
  // 20% of 690 instances; 123 correct predictions give the best reported accuracy.
  std::vector<std::uint8_t> truth(138, 1);
  std::vector<std::uint8_t> pred(138, 1);
  for (std::size_t i = 0; i < 15; ++i) pred[i * 9] = 0;
  const double acc = cfa::accuracy(LabelVector(pred), LabelVector(truth));
  CHECK(acc == Approx(123.0 / 138.0));
  CHECK(acc == Approx(0.8913).margin(5e-5));
}

TEST_CASE("enumerate_cases counts", "[evaluation]") {
  CHECK(cfa::enumerate_cases(2).size() == 4);
  CHECK(cfa::enumerate_cases(3).size() == 16);
  CHECK(cfa::enumerate_cases(5).size() == 104);
  CHECK_THROWS_AS(cfa::enumerate_cases(1), cfa::InputError);
  for (std::size_t t = 2; t <= 8; ++t) {
    CHECK(cfa::leaderboard_size(t) == t + cfa::enumerate_cases(t).size());
  }
  CHECK(cfa::leaderboard_size(5) == 109);
}

TEST_CASE("enumerate_cases orders subsets by size then lexicographically", "[evaluation]") {
  const auto cases = cfa::enumerate_cases(4);
  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t i = 0; i < cases.size(); i += 4) subsets.push_back(cases[i].systems);
  const std::vector<std::vector<std::size_t>> expected{
      {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
      {0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 1, 2, 3}};
  CHECK(subsets == expected);

  CHECK(cases[0].type == cfa::FusionType::score);
  CHECK(cases[0].weighting == cfa::Weighting::ac);
  CHECK(cases[1].weighting == cfa::Weighting::wcds);
  CHECK(cases[2].type == cfa::FusionType::rank);
  CHECK(cases[3].weighting == cfa::Weighting::wcds);

  std::set<std::tuple<std::vector<std::size_t>, int, int>> distinct;
  for (const auto& c : cases) distinct.insert({c.systems, int(c.type), int(c.weighting)});
  CHECK(distinct.size() == cases.size());
}

TEST_CASE("case_name concatenates short ids and joins long ones", "[evaluation]") {
  const std::vector<cfa::ScoringSystem> short_ids{cfa::ScoringSystem("B", {0.1}), cfa::ScoringSystem("C", {0.1}),
                                                  cfa::ScoringSystem("D", {0.1})};
  CHECK(cfa::case_name(short_ids, std::vector<std::size_t>{0, 1, 2}) == "BCD");
  const std::vector<cfa::ScoringSystem> long_ids{cfa::ScoringSystem("knn", {0.1}), cfa::ScoringSystem("rf", {0.1})};
  CHECK(cfa::case_name(long_ids, std::vector<std::size_t>{0, 1}) == "knn+rf");
}

TEST_CASE("run_all yields singles plus every fusion case, sorted", "[evaluation]") {
  const auto inst = cfa::random_instance(11, 5, 40, 18);
  const auto board = cfa::run_all(inst.systems, inst.truth);
  REQUIRE(board.rows.size() == 109);
  CHECK(board.positives == 18);
  CHECK(board.instances == 40);
  for (std::size_t i = 1; i < board.rows.size(); ++i) {
    const auto& a = board.rows[i - 1];
    const auto& b = board.rows[i];
    CHECK((a.accuracy > b.accuracy || (a.accuracy == b.accuracy && a.name <= b.name)));
  }
  for (const auto& row : board.rows) {
    CHECK(row.accuracy == Approx(cfa::accuracy(row.predictions, inst.truth)));
    if (row.fusion_type == cfa::FusionType::rank) CHECK(row.predictions.positive_count() == 18);
  }
  std::size_t singles = 0;
  for (const auto& row : board.rows) singles += row.is_single() ? 1 : 0;
  CHECK(singles == 5);
}

TEST_CASE("a system fused with its own copy scores like the single", "[evaluation]") {
  const auto inst = cfa::random_instance(3, 2, 30, 12);
  const std::vector<cfa::ScoringSystem> systems{inst.systems[0], cfa::ScoringSystem("Z", std::vector<double>(
                                                                     inst.systems[0].scores().begin(),
                                                                     inst.systems[0].scores().end()))};
  const auto board = cfa::run_all(systems, inst.truth);
  double single = -1.0;
  double fused = -2.0;
  for (const auto& row : board.rows) {
    if (row.is_single() && row.name == systems[0].id()) single = row.accuracy;
    if (row.fusion_type == cfa::FusionType::score && row.weighting == cfa::Weighting::ac) fused = row.accuracy;
  }
  CHECK(single == fused);
  // Identical systems have zero diversity, so both WCDS cases fall back to AC with a warning.
  CHECK(board.warnings.size() == 2);
}

TEST_CASE("run_all honours the positives override and threshold", "[evaluation]") {
  const auto inst = cfa::random_instance(5, 3, 20, 10);
  cfa::EvaluationConfig config;
  config.positives = 4;
  config.threshold = 0.9;
  const auto board = cfa::run_all(inst.systems, inst.truth, config);
  CHECK(board.positives == 4);
  for (const auto& row : board.rows) {
    if (row.fusion_type == cfa::FusionType::rank) CHECK(row.predictions.positive_count() == 4);
  }
  config.positives = 21;
  CHECK_THROWS_AS(cfa::run_all(inst.systems, inst.truth, config), cfa::InputError);
}

TEST_CASE("run_all result does not depend on thread count", "[evaluation]") {
  const auto inst = cfa::random_instance(9, 5, 60, 30);
  cfa::EvaluationConfig threaded;
  threaded.threads = 4;
  const auto a = cfa::run_all(inst.systems, inst.truth);
  const auto b = cfa::run_all(inst.systems, inst.truth, threaded);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].name == b.rows[i].name);
    CHECK(a.rows[i].fused.values == b.rows[i].fused.values);
    CHECK(a.rows[i].accuracy == b.rows[i].accuracy);
  }
}

TEST_CASE("run_all rejects unusable experiments", "[evaluation]") {
  const auto inst = cfa::random_instance(1, 3, 10, 5);
  CHECK_THROWS_AS(cfa::run_all(std::span(inst.systems).first(1), inst.truth), cfa::InputError);
  CHECK_THROWS_AS(cfa::run_all(inst.systems, LabelVector({1, 0, 1})), cfa::InputError);
}

TEST_CASE("leaderboard row count formula for t = 2..8", "[evaluation]") {
  for (std::size_t t = 2; t <= 8; ++t) {
    const auto inst = cfa::random_instance(100 + t, t, 20, 9);
    const auto board = cfa::run_all(inst.systems, inst.truth);
    CHECK(board.rows.size() == t + 4 * ((std::size_t{1} << t) - 1 - t));
  }
}
