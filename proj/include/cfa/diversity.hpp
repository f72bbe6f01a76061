#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cfa/scoring.hpp"

namespace cfa {

/// Root of the summed squared RSC differences over all n rank positions, divided by n - 2.
/// Requires equal lengths and n >= 3.
double cognitive_diversity(const RscCurve& a, const RscCurve& b);

/// Symmetric t x t matrix of pairwise cognitive diversity with a zero diagonal.
class CdMatrix {
 public:
  /// Row-major entries. Throws InputError unless the matrix is square, symmetric,
  /// zero on the diagonal, finite and non-negative.
  CdMatrix(std::size_t systems, std::vector<double> entries);

  std::size_t size() const noexcept { return systems_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * systems_ + j]; }
  std::span<const double> entries() const noexcept { return entries_; }

 private:
  std::size_t systems_;
  std::vector<double> entries_;
};

CdMatrix cd_matrix(std::span<const RscCurve> curves);

/// Diversity strength of every member of `subset`, computed within that subset only:
/// the mean CD from the member to the other members. Result is aligned with `subset`.
std::vector<double> diversity_strength(const CdMatrix& matrix, std::span<const std::size_t> subset);

}  // namespace cfa
