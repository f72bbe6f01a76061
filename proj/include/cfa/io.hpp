#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfa/diversity.hpp"
#include "cfa/evaluation.hpp"
#include "cfa/scoring.hpp"

namespace cfa {

// Scores CSV contract:
//   optional leading comment lines starting with '#'
//   header   item_id,label,<sys1>,<sys2>,...
//   rows     <id>,<0|1>,<score>,<score>,...
// UTF-8, '.' decimal separator, no quoting. Blank lines are skipped.
struct ScoresTable {
  std::vector<std::string> comments;
  std::vector<std::string> item_ids;
  std::vector<std::uint8_t> labels;
  std::vector<std::string> system_ids;
  std::vector<std::vector<double>> columns;  // one per system, raw values as read

  std::size_t rows() const noexcept { return item_ids.size(); }
};

ScoresTable read_scores_table(std::istream& in, std::string_view source = "<input>");
ScoresTable read_scores_table(const std::filesystem::path& path);

struct LoadedScores {
  std::vector<std::string> item_ids;
  std::vector<ScoringSystem> systems;  // header order
  LabelVector labels;
  std::vector<std::string> warnings;
};

/// With normalize set, every column is min-max normalized. Otherwise columns already
/// inside [0,1] pass through unchanged and any other column is normalized with a warning.
LoadedScores to_systems(const ScoresTable& table, bool normalize);
LoadedScores load_scores(const std::filesystem::path& path, bool normalize = false);

enum class OutputFormat { csv, json };

OutputFormat parse_output_format(std::string_view text);

struct RunConfig {
  bool normalize = false;
  RankWeightMode rank_weight_mode = RankWeightMode::inverse;
  double threshold = 0.5;
  std::optional<std::size_t> positives;
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 20250101;
  unsigned threads = 1;

  /// Throws InputError when a field is out of range.
  void validate() const;
  EvaluationConfig evaluation() const;
};

/// Columns case,fusion_type,weighting,accuracy with accuracy at 4 decimals.
/// Singles are reported with fusion_type "single" and weighting "none".
std::string emit_leaderboard(const Leaderboard& board, OutputFormat format);

/// Long format: system,rank_position,normalized_score.
std::string emit_rsc(std::span<const ScoringSystem> systems, std::span<const RscCurve> curves);

/// CD matrix with one DS value per system, DS taken over all systems.
std::string emit_diversity_report(std::span<const ScoringSystem> systems, const CdMatrix& matrix,
                                  std::span<const double> strengths, OutputFormat format);

}  // namespace cfa
