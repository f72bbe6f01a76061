#include "cfa/diversity.hpp"

#include <cmath>

#include <fmt/format.h>

#include "cfa/errors.hpp"

namespace cfa {

double cognitive_diversity(const RscCurve& a, const RscCurve& b) {
  if (a.size() != b.size()) {
    throw InputError(
        fmt::format("cognitive diversity needs equal-length curves, got {} and {}", a.size(), b.size()));
  }
  const std::size_t n = a.size();
  if (n < 3) {
    throw InputError(fmt::format(
        "cognitive diversity divides by n - 2 and needs at least 3 instances, got {}", n));
  }
  const auto fa = a.values();
  const auto fb = b.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = fa[i] - fb[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(n - 2));
}

CdMatrix::CdMatrix(std::size_t systems, std::vector<double> entries)
    : systems_(systems), entries_(std::move(entries)) {
  if (entries_.size() != systems_ * systems_) {
    throw InputError(fmt::format("CD matrix for {} systems needs {} entries, got {}", systems_,
                                 systems_ * systems_, entries_.size()));
  }
  for (std::size_t i = 0; i < systems_; ++i) {
    if ((*this)(i, i) != 0.0) {
      throw InputError(fmt::format("CD matrix diagonal entry {} is not zero", i));
    }
    for (std::size_t j = 0; j < systems_; ++j) {
      const double v = (*this)(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw InputError(fmt::format("CD matrix entry ({}, {}) = {} is not a finite non-negative value", i, j, v));
      }
      if (v != (*this)(j, i)) {
        throw InputError(fmt::format("CD matrix is not symmetric at ({}, {})", i, j));
      }
    }
  }
}

CdMatrix cd_matrix(std::span<const RscCurve> curves) {
  const std::size_t t = curves.size();
  if (t < 2) {
    throw InputError(fmt::format("CD matrix needs at least 2 systems, got {}", t));
  }
  std::vector<double> entries(t * t, 0.0);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i + 1; j < t; ++j) {
      const double cd = cognitive_diversity(curves[i], curves[j]);
      entries[i * t + j] = cd;
      entries[j * t + i] = cd;
    }
  }
  return CdMatrix(t, std::move(entries));
}

std::vector<double> diversity_strength(const CdMatrix& matrix, std::span<const std::size_t> subset) {
  if (subset.size() < 2) {
    throw InputError(
        fmt::format("diversity strength needs a subset of at least 2 systems, got {}", subset.size()));
  }
  std::vector<bool> seen(matrix.size(), false);
  for (std::size_t s : subset) {
    if (s >= matrix.size() || seen[s]) {
      throw InputError(fmt::format("subset member {} is out of range or repeated", s));
    }
    seen[s] = true;
  }

  const double others = static_cast<double>(subset.size() - 1);
  std::vector<double> strengths;
  strengths.reserve(subset.size());
  for (std::size_t i : subset) {
    double sum = 0.0;
    for (std::size_t j : subset) {
      if (j != i) sum += matrix(i, j);
    }
    strengths.push_back(sum / others);
  }
  return strengths;
}

}  // namespace cfa
