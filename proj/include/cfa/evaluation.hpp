#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfa/fusion.hpp"
#include "cfa/scoring.hpp"

namespace cfa {

/// Binary labels: 1 approve, 0 deny.
class LabelVector {
 public:
  LabelVector() = default;
  explicit LabelVector(std::vector<std::uint8_t> labels);

  std::span<const std::uint8_t> labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::uint8_t operator[](std::size_t i) const { return labels_[i]; }
  std::size_t positive_count() const noexcept { return positives_; }

  friend bool operator==(const LabelVector&, const LabelVector&) = default;

 private:
  std::vector<std::uint8_t> labels_;
  std::size_t positives_ = 0;
};

/// Label 1 iff value >= threshold. Values must lie in [0,1].
LabelVector labels_from_scores(std::span<const double> values, double threshold = 0.5);

/// Labels the `positives` instances with the smallest fused rank values as 1.
/// Ties at the cutoff go to the lower instance index, so exactly `positives` ones are emitted.
LabelVector labels_from_ranks(std::span<const double> rank_values, std::size_t positives);

/// Fraction of positions where prediction and truth agree.
double accuracy(const LabelVector& predicted, const LabelVector& truth);

/// Every subset of size 2..t crossed with {score, rank} x {AC, WCDS}. Subsets are ordered
/// by size, then lexicographically by system index; within a subset the order is
/// score/AC, score/WCDS, rank/AC, rank/WCDS.
std::vector<FusionCase> enumerate_cases(std::size_t systems);

/// Number of leaderboard rows for t systems: t singles plus 4 per subset of size >= 2.
std::size_t leaderboard_size(std::size_t systems);

struct EvaluationConfig {
  double threshold = 0.5;
  // Overrides the ground-truth positive count used for rank thresholding.
  std::optional<std::size_t> positives;
  RankWeightMode rank_weight_mode = RankWeightMode::inverse;
  unsigned threads = 1;
};

struct FusionResult {
  std::string name;                   // e.g. "BCD"
  std::vector<std::size_t> systems;   // one entry for a single system
  std::optional<FusionType> fusion_type;  // empty for a single system
  std::optional<Weighting> weighting;     // empty for a single system
  FusedValues fused;
  LabelVector predictions;
  std::size_t correct = 0;
  double accuracy = 0.0;

  bool is_single() const noexcept { return !fusion_type.has_value(); }
};

struct Leaderboard {
  // Sorted by accuracy descending, then name, fusion type and weighting ascending.
  std::vector<FusionResult> rows;
  std::vector<std::string> system_ids;
  std::size_t instances = 0;
  std::size_t positives = 0;
  std::vector<std::string> warnings;
};

/// Case name: the concatenated system ids when all are one character long, otherwise
/// the ids joined with '+'.
std::string case_name(std::span<const ScoringSystem> systems, std::span<const std::size_t> members);

/// Evaluates every single system with the score threshold and every enumerated fusion
/// case, score cases by the threshold and rank cases by positive-count thresholding.
Leaderboard run_all(std::span<const ScoringSystem> systems, const LabelVector& truth,
                    const EvaluationConfig& config = {});

}  // namespace cfa
