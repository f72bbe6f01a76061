#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cfa/evaluation.hpp"
#include "cfa/scoring.hpp"

namespace cfa {

/// Small deterministic generator (splitmix64) so random instances are identical on
/// every platform and standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform on [0,1) with 53 random bits.
  double uniform();
  /// Uniform integer on [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi);

 private:
  std::uint64_t state_;
};

struct RandomInstance {
  std::vector<ScoringSystem> systems;
  LabelVector truth;
};

/// t systems over n instances with exactly `positives` positive labels. Scores are
/// multiples of 2^-20 in [0,1] loosely correlated with the labels, so ties occur.
RandomInstance random_instance(std::uint64_t seed, std::size_t systems, std::size_t instances,
                               std::size_t positives);

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the engine and the naive reference on a seeded t=5, n=50, P=25 instance and
/// compares them row by row, together with the case-count, pairwise WCDS/AC and
/// determinism checks.
std::vector<CheckOutcome> run_selfcheck(std::uint64_t seed);

}  // namespace cfa
