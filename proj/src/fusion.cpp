#include "cfa/fusion.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cfa/errors.hpp"

namespace cfa {

std::string_view to_string(FusionType type) noexcept {
  return type == FusionType::score ? "score" : "rank";
}

std::string_view to_string(Weighting weighting) noexcept {
  return weighting == Weighting::ac ? "AC" : "WCDS";
}

std::string_view to_string(RankWeightMode mode) noexcept {
  return mode == RankWeightMode::inverse ? "inverse" : "direct";
}

RankWeightMode parse_rank_weight_mode(std::string_view text) {
  if (text == "inverse") return RankWeightMode::inverse;
  if (text == "direct") return RankWeightMode::direct;
  throw InputError(fmt::format("unknown rank weight mode '{}' (expected inverse or direct)", text));
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw InputError("weight vector must not be empty");
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] <= 0.0) {
      throw InputError(fmt::format("weight {} = {} is not strictly positive", i, weights_[i]));
    }
  }
}

WeightVector case_weights(const FusionCase& fusion_case, const CdMatrix& matrix) {
  const std::size_t k = fusion_case.systems.size();
  if (fusion_case.weighting == Weighting::ac) {
    return WeightVector(std::vector<double>(k, 1.0));
  }

  auto strengths = diversity_strength(matrix, fusion_case.systems);
  if (std::ranges::any_of(strengths, [](double ds) { return ds <= 0.0; })) {
    WeightVector fallback(std::vector<double>(k, 1.0));
    std::string members;
    for (std::size_t s : fusion_case.systems) {
      members += members.empty() ? fmt::format("{}", s) : fmt::format(",{}", s);
    }
    fallback.warning = fmt::format(
        "zero diversity strength within systems {{{}}}; WCDS fell back to equal weights", members);
    return fallback;
  }
  return WeightVector(std::move(strengths));
}

namespace {

// Both combinations are invariant to a common scale on the weights. Dividing by the
// largest weight makes equal weights exactly 1.0, so proportional weights reproduce
// the unweighted mean bit for bit.
std::vector<double> unit_scaled(const WeightVector& weights) {
  const double top = *std::ranges::max_element(weights.weights());
  std::vector<double> scaled;
  scaled.reserve(weights.size());
  for (double w : weights.weights()) scaled.push_back(w / top);
  return scaled;
}

template <typename Column>
FusedValues weighted_mean(const std::vector<Column>& columns, std::span<const double> coefficients,
                          FusionType kind) {
  const std::size_t n = columns.front().size();
  double total = 0.0;
  for (double c : coefficients) total += c;

  FusedValues fused{kind, std::vector<double>(n)};
  for (std::size_t d = 0; d < n; ++d) {
    double acc = 0.0;
    double lo = static_cast<double>(columns.front()[d]);
    double hi = lo;
    for (std::size_t j = 0; j < columns.size(); ++j) {
      const double v = static_cast<double>(columns[j][d]);
      acc += coefficients[j] * v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    // Rounding may step one ulp outside the convex hull; pin it back.
    fused.values[d] = std::clamp(acc / total, lo, hi);
  }
  return fused;
}

template <typename Refs>
void check_shape(const Refs& refs, const WeightVector& weights, std::string_view what) {
  if (refs.empty()) {
    throw InputError(fmt::format("cannot fuse an empty list of {}", what));
  }
  if (refs.size() != weights.size()) {
    throw InputError(fmt::format("{} {} given with {} weights", refs.size(), what, weights.size()));
  }
  const std::size_t n = refs.front().get().size();
  for (const auto& r : refs) {
    if (r.get().size() != n) {
      throw InputError(
          fmt::format("{} have mismatched lengths ({} vs {})", what, r.get().size(), n));
    }
  }
}

}  // namespace

FusedValues fuse_scores(const SystemRefs& systems, const WeightVector& weights) {
  check_shape(systems, weights, "scoring systems");
  std::vector<std::span<const double>> columns;
  columns.reserve(systems.size());
  for (const auto& s : systems) columns.push_back(s.get().scores());
  return weighted_mean(columns, unit_scaled(weights), FusionType::score);
}

FusedValues fuse_scores(std::span<const ScoringSystem> systems, const WeightVector& weights) {
  return fuse_scores(SystemRefs(systems.begin(), systems.end()), weights);
}

FusedValues fuse_ranks(const RankRefs& ranks, const WeightVector& weights, RankWeightMode mode) {
  check_shape(ranks, weights, "rank functions");
  std::vector<std::span<const std::size_t>> columns;
  columns.reserve(ranks.size());
  for (const auto& r : ranks) columns.push_back(r.get().ranks());

  auto coefficients = unit_scaled(weights);
  if (mode == RankWeightMode::inverse) {
    for (double& c : coefficients) c = 1.0 / c;
  }
  return weighted_mean(columns, coefficients, FusionType::rank);
}

FusedValues fuse_ranks(std::span<const RankFunction> ranks, const WeightVector& weights,
                       RankWeightMode mode) {
  return fuse_ranks(RankRefs(ranks.begin(), ranks.end()), weights, mode);
}

}  // namespace cfa
