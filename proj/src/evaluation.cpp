#include "cfa/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include <fmt/format.h>

#include "cfa/diversity.hpp"
#include "cfa/errors.hpp"

namespace cfa {

LabelVector::LabelVector(std::vector<std::uint8_t> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] > 1) {
      throw InputError(fmt::format("label {} at index {} is not 0 or 1", int{labels_[i]}, i));
    }
    positives_ += labels_[i];
  }
}

LabelVector labels_from_scores(std::span<const double> values, double threshold) {
  std::vector<std::uint8_t> labels;
  labels.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InputError(fmt::format("fused score {} at index {} is outside [0,1]", v, i));
    }
    labels.push_back(v >= threshold ? 1 : 0);
  }
  return LabelVector(std::move(labels));
}

LabelVector labels_from_ranks(std::span<const double> rank_values, std::size_t positives) {
  const std::size_t n = rank_values.size();
  if (positives > n) {
    throw InputError(fmt::format("positive count {} exceeds the {} instances", positives, n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(rank_values[i])) {
      throw InputError(fmt::format("fused rank value at index {} is not finite", i));
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) {
    return rank_values[a] < rank_values[b];
  });

  std::vector<std::uint8_t> labels(n, 0);
  for (std::size_t k = 0; k < positives; ++k) labels[order[k]] = 1;
  return LabelVector(std::move(labels));
}

namespace {

std::size_t count_matches(const LabelVector& predicted, const LabelVector& truth) {
  if (predicted.size() != truth.size()) {
    throw InputError(fmt::format("prediction length {} does not match truth length {}",
                                 predicted.size(), truth.size()));
  }
  std::size_t matches = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    matches += predicted[i] == truth[i] ? 1 : 0;
  }
  return matches;
}

}  // namespace

double accuracy(const LabelVector& predicted, const LabelVector& truth) {
  const std::size_t matches = count_matches(predicted, truth);
  if (truth.size() == 0) {
    throw InputError("accuracy is undefined for zero instances");
  }
  return static_cast<double>(matches) / static_cast<double>(truth.size());
}

std::vector<FusionCase> enumerate_cases(std::size_t systems) {
  if (systems < 2) {
    throw InputError(fmt::format("fusion needs at least 2 systems, got {}", systems));
  }
  if (systems > 20) {
    throw InputError(fmt::format("{} systems would enumerate more than a million subsets", systems));
  }

  std::vector<FusionCase> cases;
  cases.reserve(4 * ((std::size_t{1} << systems) - 1 - systems));
  for (std::size_t k = 2; k <= systems; ++k) {
    // Lexicographic walk over k-combinations of 0..systems-1.
    std::vector<std::size_t> members(k);
    std::iota(members.begin(), members.end(), std::size_t{0});
    while (true) {
      for (FusionType type : {FusionType::score, FusionType::rank}) {
        for (Weighting weighting : {Weighting::ac, Weighting::wcds}) {
          cases.push_back(FusionCase{members, type, weighting});
        }
      }
      std::size_t i = k;
      while (i > 0 && members[i - 1] == systems - k + (i - 1)) --i;
      if (i == 0) break;
      ++members[i - 1];
      for (std::size_t j = i; j < k; ++j) members[j] = members[j - 1] + 1;
    }
  }
  return cases;
}

std::size_t leaderboard_size(std::size_t systems) {
  return systems + 4 * ((std::size_t{1} << systems) - 1 - systems);
}

std::string case_name(std::span<const ScoringSystem> systems, std::span<const std::size_t> members) {
  const bool short_ids = std::ranges::all_of(
      members, [&](std::size_t m) { return systems[m].id().size() == 1; });
  std::string name;
  for (std::size_t m : members) {
    if (!short_ids && !name.empty()) name += '+';
    name += systems[m].id();
  }
  return name;
}

namespace {

int type_order(const FusionResult& r) {
  if (!r.fusion_type) return 0;
  return *r.fusion_type == FusionType::score ? 1 : 2;
}

int weighting_order(const FusionResult& r) {
  if (!r.weighting) return 0;
  return *r.weighting == Weighting::ac ? 1 : 2;
}

bool leaderboard_before(const FusionResult& a, const FusionResult& b) {
  if (a.correct != b.correct) return a.correct > b.correct;
  if (a.name != b.name) return a.name < b.name;
  if (type_order(a) != type_order(b)) return type_order(a) < type_order(b);
  return weighting_order(a) < weighting_order(b);
}

struct SweepContext {
  std::span<const ScoringSystem> systems;
  const std::vector<RankFunction>& ranks;
  const CdMatrix& matrix;
  const LabelVector& truth;
  std::size_t positives;
  const EvaluationConfig& config;
};

FusionResult evaluate_case(const SweepContext& ctx, const FusionCase& fusion_case,
                           std::optional<std::string>& warning) {
  FusionResult result;
  result.name = case_name(ctx.systems, fusion_case.systems);
  result.systems = fusion_case.systems;
  result.fusion_type = fusion_case.type;
  result.weighting = fusion_case.weighting;

  WeightVector weights = case_weights(fusion_case, ctx.matrix);
  if (weights.warning) {
    warning = fmt::format("{} ({} fusion): {}", result.name, to_string(fusion_case.type),
                          *weights.warning);
  }

  if (fusion_case.type == FusionType::score) {
    SystemRefs members;
    for (std::size_t s : fusion_case.systems) members.emplace_back(ctx.systems[s]);
    result.fused = fuse_scores(members, weights);
    result.predictions = labels_from_scores(result.fused.values, ctx.config.threshold);
  } else {
    RankRefs members;
    for (std::size_t s : fusion_case.systems) members.emplace_back(ctx.ranks[s]);
    result.fused = fuse_ranks(members, weights, ctx.config.rank_weight_mode);
    result.predictions = labels_from_ranks(result.fused.values, ctx.positives);
  }
  result.correct = count_matches(result.predictions, ctx.truth);
  result.accuracy = static_cast<double>(result.correct) / static_cast<double>(ctx.truth.size());
  return result;
}

}  // namespace

Leaderboard run_all(std::span<const ScoringSystem> systems, const LabelVector& truth,
                    const EvaluationConfig& config) {
  if (systems.size() < 2) {
    throw InputError(fmt::format("fusion needs at least 2 scoring systems, got {}", systems.size()));
  }
  const std::size_t n = truth.size();
  if (n < 3) {
    throw InputError(fmt::format("need at least 3 instances, got {}", n));
  }
  for (const auto& s : systems) {
    if (s.size() != n) {
      throw InputError(fmt::format("system '{}' has {} scores but there are {} labels", s.id(),
                                   s.size(), n));
    }
  }
  if (!(config.threshold >= 0.0 && config.threshold <= 1.0)) {
    throw InputError(fmt::format("score threshold {} is outside [0,1]", config.threshold));
  }
  const std::size_t positives = config.positives.value_or(truth.positive_count());
  if (positives > n) {
    throw InputError(fmt::format("positive count {} exceeds the {} instances", positives, n));
  }

  std::vector<RankFunction> ranks;
  std::vector<RscCurve> curves;
  ranks.reserve(systems.size());
  curves.reserve(systems.size());
  for (const auto& s : systems) {
    ranks.push_back(derive_rank(s));
    curves.push_back(rsc_curve(s, ranks.back()));
  }
  const CdMatrix matrix = cd_matrix(curves);

  Leaderboard board;
  board.instances = n;
  board.positives = positives;
  for (const auto& s : systems) board.system_ids.push_back(s.id());

  for (std::size_t i = 0; i < systems.size(); ++i) {
    FusionResult single;
    single.name = systems[i].id();
    single.systems = {i};
    single.fused = FusedValues{FusionType::score, std::vector<double>(systems[i].scores().begin(),
                                                                      systems[i].scores().end())};
    single.predictions = labels_from_scores(single.fused.values, config.threshold);
    single.correct = count_matches(single.predictions, truth);
    single.accuracy = static_cast<double>(single.correct) / static_cast<double>(n);
    board.rows.push_back(std::move(single));
  }

  const auto cases = enumerate_cases(systems.size());
  std::vector<FusionResult> results(cases.size());
  std::vector<std::optional<std::string>> warnings(cases.size());
  const SweepContext ctx{systems, ranks, matrix, truth, positives, config};

  // Each case writes only its own slot, so the merged result is independent of scheduling.
  const unsigned workers = std::clamp<unsigned>(config.threads, 1u, 64u);
  if (workers == 1) {
    for (std::size_t c = 0; c < cases.size(); ++c) {
      results[c] = evaluate_case(ctx, cases[c], warnings[c]);
    }
  } else {
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t c = w; c < cases.size(); c += workers) {
              results[c] = evaluate_case(ctx, cases[c], warnings[c]);
            }
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  for (std::size_t c = 0; c < cases.size(); ++c) {
    board.rows.push_back(std::move(results[c]));
    if (warnings[c]) board.warnings.push_back(std::move(*warnings[c]));
  }
  std::ranges::stable_sort(board.rows, leaderboard_before);

  if (board.rows.size() != leaderboard_size(systems.size())) {
    throw InvariantError(fmt::format("leaderboard has {} rows, expected {}", board.rows.size(),
                                     leaderboard_size(systems.size())));
  }
  return board;
}

}  // namespace cfa
