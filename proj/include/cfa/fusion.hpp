#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfa/diversity.hpp"
#include "cfa/scoring.hpp"

namespace cfa {

enum class FusionType { score, rank };

// ac: every weight is 1. wcds: weight is the system's diversity strength within the case.
enum class Weighting { ac, wcds };

// How a weight enters rank fusion. inverse uses 1/w as the coefficient, direct uses w.
enum class RankWeightMode { inverse, direct };

std::string_view to_string(FusionType type) noexcept;
std::string_view to_string(Weighting weighting) noexcept;
std::string_view to_string(RankWeightMode mode) noexcept;
RankWeightMode parse_rank_weight_mode(std::string_view text);

struct FusionCase {
  std::vector<std::size_t> systems;  // indices into the experiment's system list, ascending
  FusionType type = FusionType::score;
  Weighting weighting = Weighting::ac;
};

/// Strictly positive weights aligned with a case's systems.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);

  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

  /// Set when WCDS weights degenerated and AC weights were substituted.
  std::optional<std::string> warning;

 private:
  std::vector<double> weights_;
};

struct FusedValues {
  FusionType kind = FusionType::score;
  // score: fused score in [0,1]. rank: fused rank value in [1,n], lower is more trustworthy.
  std::vector<double> values;
};

/// AC gives all ones. WCDS gives within-subset diversity strengths, falling back to
/// all ones (with a warning) when any strength is zero.
WeightVector case_weights(const FusionCase& fusion_case, const CdMatrix& matrix);

using SystemRefs = std::vector<std::reference_wrapper<const ScoringSystem>>;
using RankRefs = std::vector<std::reference_wrapper<const RankFunction>>;

/// Per-instance weighted arithmetic mean of scores.
FusedValues fuse_scores(const SystemRefs& systems, const WeightVector& weights);
FusedValues fuse_scores(std::span<const ScoringSystem> systems, const WeightVector& weights);

/// Per-instance weighted mean of ranks. In inverse mode system j contributes with
/// coefficient 1/w_j; in direct mode with w_j.
FusedValues fuse_ranks(const RankRefs& ranks, const WeightVector& weights,
                       RankWeightMode mode = RankWeightMode::inverse);
FusedValues fuse_ranks(std::span<const RankFunction> ranks, const WeightVector& weights,
                       RankWeightMode mode = RankWeightMode::inverse);

}  // namespace cfa
