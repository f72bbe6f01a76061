#include "cfa/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "cfa/errors.hpp"

namespace cfa {

NormalizedScores normalize_scores(std::span<const double> raw) {
  if (raw.empty()) {
    throw InputError("cannot normalize an empty score vector");
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i])) {
      throw InputError(fmt::format("non-finite score at index {}", i));
    }
  }

  auto [min_it, max_it] = std::ranges::minmax_element(raw);
  const double lo = *min_it;
  const double hi = *max_it;

  NormalizedScores out;
  if (hi == lo) {
    out.values.assign(raw.size(), 0.5);
    out.warnings.push_back(
        fmt::format("constant score vector ({}); every score normalized to 0.5", lo));
    return out;
  }

  const double range = hi - lo;
  out.values.reserve(raw.size());
  for (double x : raw) {
    out.values.push_back(std::clamp((x - lo) / range, 0.0, 1.0));
  }
  return out;
}

ScoringSystem::ScoringSystem(std::string id, std::vector<double> scores)
    : id_(std::move(id)), scores_(std::move(scores)) {
  if (id_.empty()) {
    throw InputError("scoring system id must not be empty");
  }
  for (std::size_t i = 0; i < scores_.size(); ++i) {
    const double s = scores_[i];
    if (!std::isfinite(s) || s < 0.0 || s > 1.0) {
      throw InputError(
          fmt::format("system '{}': score {} at index {} is outside [0,1]", id_, s, i));
    }
  }
}

RankFunction::RankFunction(std::vector<std::size_t> ranks) : ranks_(std::move(ranks)) {
  std::vector<bool> seen(ranks_.size(), false);
  for (std::size_t d = 0; d < ranks_.size(); ++d) {
    const std::size_t r = ranks_[d];
    if (r < 1 || r > ranks_.size() || seen[r - 1]) {
      throw InputError(fmt::format("rank {} at instance {} breaks the 1..{} bijection", r, d,
                                   ranks_.size()));
    }
    seen[r - 1] = true;
  }
}

std::vector<std::size_t> RankFunction::inverse() const {
  std::vector<std::size_t> holder(ranks_.size());
  for (std::size_t d = 0; d < ranks_.size(); ++d) {
    holder[ranks_[d] - 1] = d;
  }
  return holder;
}

RscCurve::RscCurve(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InputError(fmt::format("RSC value at rank {} is not finite", i + 1));
    }
    if (i > 0 && values_[i] > values_[i - 1]) {
      throw InputError(fmt::format("RSC curve increases between ranks {} and {}", i, i + 1));
    }
  }
}

RankFunction derive_rank(const ScoringSystem& system) {
  const auto scores = system.scores();
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::vector<std::size_t> ranks(scores.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    ranks[order[pos]] = pos + 1;
  }
  return RankFunction(std::move(ranks));
}

RscCurve rsc_curve(const ScoringSystem& system, const RankFunction& rank) {
  if (rank.size() != system.size()) {
    throw InputError(fmt::format("rank function covers {} instances but system '{}' has {}",
                                 rank.size(), system.id(), system.size()));
  }
  std::vector<double> values;
  values.reserve(system.size());
  for (std::size_t instance : rank.inverse()) {
    values.push_back(system[instance]);
  }
  if (!std::ranges::is_sorted(values, std::greater<>{})) {
    throw InputError(fmt::format("rank function was not derived from system '{}'", system.id()));
  }
  return RscCurve(std::move(values));
}

}  // namespace cfa
