#include "cfa/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "cfa/diversity.hpp"
#include "cfa/io.hpp"
#include "cfa/reference.hpp"

namespace cfa {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::size_t SplitMix64::between(std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(next() % (hi - lo + 1));
}

RandomInstance random_instance(std::uint64_t seed, std::size_t systems, std::size_t instances,
                               std::size_t positives) {
  SplitMix64 rng(seed);

  std::vector<std::uint8_t> labels(instances, 0);
  std::fill_n(labels.begin(), std::min(positives, instances), std::uint8_t{1});
  for (std::size_t i = instances; i > 1; --i) {
    std::swap(labels[i - 1], labels[rng.between(0, i - 1)]);
  }

  constexpr double grid = 1048576.0;  // 2^20
  RandomInstance out;
  for (std::size_t j = 0; j < systems; ++j) {
    const double signal = 0.1 + 0.3 * rng.uniform();
    std::vector<double> scores(instances);
    for (std::size_t d = 0; d < instances; ++d) {
      const double centre = labels[d] ? 0.5 + signal : 0.5 - signal;
      const double raw = std::clamp(centre + (rng.uniform() - 0.5) * 0.9, 0.0, 1.0);
      scores[d] = std::round(raw * grid) / grid;
    }
    const std::string id = systems <= 26 ? std::string(1, static_cast<char>('A' + j))
                                         : fmt::format("S{}", j);
    out.systems.emplace_back(id, std::move(scores));
  }
  out.truth = LabelVector(std::move(labels));
  return out;
}

namespace {

using RowKey = std::tuple<std::string, std::string, std::string>;

RowKey key_of(const FusionResult& row) {
  return {row.name, row.fusion_type ? std::string(to_string(*row.fusion_type)) : "single",
          row.weighting ? std::string(to_string(*row.weighting)) : "none"};
}

CheckOutcome oracle_equivalence(const RandomInstance& inst, const Leaderboard& board) {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> scores;
  for (const auto& s : inst.systems) {
    ids.push_back(s.id());
    scores.emplace_back(s.scores().begin(), s.scores().end());
  }
  std::vector<int> labels(inst.truth.labels().begin(), inst.truth.labels().end());
  const auto reference_rows = reference::naive_evaluate(ids, scores, labels);

  std::map<RowKey, double> expected;
  for (const auto& r : reference_rows) expected[{r.name, r.fusion_type, r.weighting}] = r.accuracy;

  std::size_t mismatches = 0;
  std::string first;
  for (const auto& row : board.rows) {
    const auto it = expected.find(key_of(row));
    if (it == expected.end() || it->second != row.accuracy) {
      if (mismatches++ == 0) {
        first = fmt::format("; first: {} {} {} engine {:.4f}", std::get<0>(key_of(row)),
                            std::get<1>(key_of(row)), std::get<2>(key_of(row)), row.accuracy);
      }
    }
  }
  const bool sizes_match = reference_rows.size() == board.rows.size();
  return {"oracle equivalence", mismatches == 0 && sizes_match,
          fmt::format("{} engine rows, {} reference rows, {} mismatches{}", board.rows.size(),
                      reference_rows.size(), mismatches, first)};
}

CheckOutcome cd_matches_reference(const RandomInstance& inst) {
  std::vector<std::vector<double>> scores;
  std::vector<RscCurve> curves;
  for (const auto& s : inst.systems) {
    scores.emplace_back(s.scores().begin(), s.scores().end());
    curves.push_back(rsc_curve(s, derive_rank(s)));
  }
  const auto expected = reference::naive_cd_matrix(scores);
  const auto matrix = cd_matrix(curves);
  double worst = 0.0;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      worst = std::max(worst, std::fabs(matrix(i, j) - expected[i][j]));
    }
  }
  return {"CD matrix vs naive double loop", worst <= 1e-12,
          fmt::format("max abs difference {:.3e}", worst)};
}

CheckOutcome case_count(const Leaderboard& board, std::size_t systems) {
  const auto cases = enumerate_cases(systems);
  const bool ok = cases.size() == 4 * ((std::size_t{1} << systems) - 1 - systems) &&
                  board.rows.size() == leaderboard_size(systems);
  return {"case count", ok,
          fmt::format("{} fusion cases, {} leaderboard rows", cases.size(), board.rows.size())};
}

CheckOutcome pairwise_wcds_equals_ac(const Leaderboard& board) {
  std::map<std::pair<std::string, std::string>, std::map<std::string, const FusionResult*>> pairs;
  for (const auto& row : board.rows) {
    if (row.systems.size() != 2) continue;
    pairs[{row.name, std::string(to_string(*row.fusion_type))}]
         [std::string(to_string(*row.weighting))] = &row;
  }
  std::size_t checked = 0;
  std::size_t differing = 0;
  for (const auto& [key, by_weighting] : pairs) {
    const auto* ac = by_weighting.at("AC");
    const auto* wcds = by_weighting.at("WCDS");
    ++checked;
    if (ac->accuracy != wcds->accuracy || ac->predictions != wcds->predictions) ++differing;
  }
  return {"2-model WCDS == AC", differing == 0 && checked > 0,
          fmt::format("{} subset/type pairs compared, {} differ", checked, differing)};
}

CheckOutcome determinism(const RandomInstance& inst) {
  const auto first = run_all(inst.systems, inst.truth);
  const auto second = run_all(inst.systems, inst.truth);
  const bool same = emit_leaderboard(first, OutputFormat::csv) == emit_leaderboard(second, OutputFormat::csv) &&
                    emit_leaderboard(first, OutputFormat::json) == emit_leaderboard(second, OutputFormat::json);
  return {"determinism", same, same ? "repeated runs emit identical bytes" : "outputs differ"};
}

}  // namespace

std::vector<CheckOutcome> run_selfcheck(std::uint64_t seed) {
  const auto inst = random_instance(seed, 5, 50, 25);
  const auto board = run_all(inst.systems, inst.truth);
  return {oracle_equivalence(inst, board), cd_matches_reference(inst), case_count(board, 5),
          pairwise_wcds_equals_ac(board), determinism(inst)};
}

}  // namespace cfa
