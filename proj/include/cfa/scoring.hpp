#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cfa {

struct NormalizedScores {
  std::vector<double> values;
  std::vector<std::string> warnings;
};

/// Min-max normalization onto [0,1]. A constant input maps to 0.5 everywhere and
/// carries a warning instead of failing. Throws InputError on empty or non-finite input.
NormalizedScores normalize_scores(std::span<const double> raw);

/// One model's score per test instance. Scores are finite and lie in [0,1].
class ScoringSystem {
 public:
  ScoringSystem(std::string id, std::vector<double> scores);

  const std::string& id() const noexcept { return id_; }
  std::span<const double> scores() const noexcept { return scores_; }
  std::size_t size() const noexcept { return scores_.size(); }
  double operator[](std::size_t instance) const { return scores_[instance]; }

 private:
  std::string id_;
  std::vector<double> scores_;
};

/// ranks()[d] is the 1-based rank of instance d; rank 1 is the most trustworthy
/// (highest scoring) instance. Always a bijection onto 1..n.
class RankFunction {
 public:
  explicit RankFunction(std::vector<std::size_t> ranks);

  std::span<const std::size_t> ranks() const noexcept { return ranks_; }
  std::size_t size() const noexcept { return ranks_.size(); }
  std::size_t operator[](std::size_t instance) const { return ranks_[instance]; }

  /// inverse()[i - 1] is the instance holding rank i.
  std::vector<std::size_t> inverse() const;

 private:
  std::vector<std::size_t> ranks_;
};

/// Rank-score characteristic: values()[i - 1] is the score found at rank position i.
/// Non-increasing by construction.
class RscCurve {
 public:
  explicit RscCurve(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double at_rank(std::size_t position) const { return values_.at(position - 1); }

 private:
  std::vector<double> values_;
};

/// Sorts instances by score descending. Equal scores are ordered by ascending instance index.
RankFunction derive_rank(const ScoringSystem& system);

/// Reads the scores off in rank order. Throws InputError when the rank function does
/// not belong to the system (length mismatch, or an order that is not descending).
RscCurve rsc_curve(const ScoringSystem& system, const RankFunction& rank);

}  // namespace cfa
