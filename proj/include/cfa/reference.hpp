#pragma once

// Naive reference evaluator. Written directly from the defining formulas with plain
// loops over std::vector and no dependency on the cfa engine, so it can serve as an
// independent oracle for the engine's results.

#include <cstddef>
#include <string>
#include <vector>

namespace cfa::reference {

// 1 + number of instances that outrank d (higher score, or equal score and lower index).
std::vector<std::size_t> naive_ranks(const std::vector<double>& scores);

// f(i) = s(r^-1(i)).
std::vector<double> naive_rsc(const std::vector<double>& scores);

double naive_cd(const std::vector<double>& f_a, const std::vector<double>& f_b);

std::vector<std::vector<double>> naive_cd_matrix(const std::vector<std::vector<double>>& scores);

struct Row {
  std::string name;
  std::string fusion_type;  // "single", "score" or "rank"
  std::string weighting;    // "none", "AC" or "WCDS"
  std::size_t correct = 0;
  double accuracy = 0.0;
};

// All singles and all fusion cases, in no particular order.
std::vector<Row> naive_evaluate(const std::vector<std::string>& ids,
                                const std::vector<std::vector<double>>& scores,
                                const std::vector<int>& labels, double threshold = 0.5,
                                bool inverse_rank_weights = true);

}  // namespace cfa::reference
