#include "cfa/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "cfa/errors.hpp"

namespace cfa {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

}  // namespace

ScoresTable read_scores_table(std::istream& in, std::string_view source) {
  ScoresTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t row_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (is_blank(view)) continue;

    if (!have_header) {
      if (view.front() == '#') {
        table.comments.emplace_back(trim(view.substr(1)));
        continue;
      }
      const auto header = split_fields(view);
      if (header.size() < 3 || header[0] != "item_id" || header[1] != "label") {
        throw InputError(fmt::format(
            "{}: line {}: header must be item_id,label,<system>,... but was '{}'", source, line_no,
            trim(view)));
      }
      std::set<std::string_view> seen;
      for (std::size_t c = 2; c < header.size(); ++c) {
        if (header[c].empty()) {
          throw InputError(fmt::format("{}: line {}: empty system id in column {}", source,
                                       line_no, c + 1));
        }
        if (!seen.insert(header[c]).second) {
          throw InputError(fmt::format("{}: line {}: duplicate system id '{}'", source, line_no,
                                       header[c]));
        }
        table.system_ids.emplace_back(header[c]);
      }
      table.columns.resize(table.system_ids.size());
      have_header = true;
      continue;
    }

    ++row_no;
    const auto fields = split_fields(view);
    const std::size_t expected = table.system_ids.size() + 2;
    if (fields.size() != expected) {
      throw InputError(fmt::format("{}: row {} (line {}): expected {} fields, found {}", source,
                                   row_no, line_no, expected, fields.size()));
    }
    if (fields[0].empty()) {
      throw InputError(fmt::format("{}: row {} (line {}): empty item_id", source, row_no, line_no));
    }
    if (fields[1] != "0" && fields[1] != "1") {
      throw InputError(fmt::format("{}: row {} (line {}), column 'label': '{}' is not 0 or 1",
                                   source, row_no, line_no, fields[1]));
    }
    table.item_ids.emplace_back(fields[0]);
    table.labels.push_back(fields[1] == "1" ? 1 : 0);

    for (std::size_t c = 0; c < table.system_ids.size(); ++c) {
      const std::string_view cell = fields[c + 2];
      double value = 0.0;
      const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (cell.empty() || ec != std::errc{} || end != cell.data() + cell.size() ||
          !std::isfinite(value)) {
        throw InputError(fmt::format("{}: row {} (line {}), column '{}': '{}' is not a finite number",
                                     source, row_no, line_no, table.system_ids[c], cell));
      }
      table.columns[c].push_back(value);
    }
  }

  if (!have_header) {
    throw InputError(fmt::format("{}: missing header line", source));
  }
  if (table.rows() == 0) {
    throw InputError(fmt::format("{}: no data rows", source));
  }
  return table;
}

ScoresTable read_scores_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError(fmt::format("cannot open scores file '{}'", path.string()));
  }
  return read_scores_table(in, path.string());
}

LoadedScores to_systems(const ScoresTable& table, bool normalize) {
  LoadedScores loaded;
  loaded.item_ids = table.item_ids;
  loaded.labels = LabelVector(table.labels);
  for (std::size_t c = 0; c < table.system_ids.size(); ++c) {
    const auto& id = table.system_ids[c];
    const auto& raw = table.columns[c];
    const bool in_unit_range =
        std::ranges::all_of(raw, [](double x) { return x >= 0.0 && x <= 1.0; });

    if (!normalize && in_unit_range) {
      loaded.systems.emplace_back(id, raw);
      continue;
    }
    auto normalized = normalize_scores(raw);
    if (!normalize) {
      loaded.warnings.push_back(
          fmt::format("system '{}': scores fall outside [0,1] and were min-max normalized", id));
    }
    for (auto& w : normalized.warnings) {
      loaded.warnings.push_back(fmt::format("system '{}': {}", id, w));
    }
    loaded.systems.emplace_back(id, std::move(normalized.values));
  }
  return loaded;
}

LoadedScores load_scores(const std::filesystem::path& path, bool normalize) {
  return to_systems(read_scores_table(path), normalize);
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw InputError(fmt::format("unknown output format '{}' (expected csv or json)", text));
}

void RunConfig::validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw InputError(fmt::format("threshold {} is outside [0,1]", threshold));
  }
  if (threads < 1 || threads > 64) {
    throw InputError(fmt::format("thread count {} is outside 1..64", threads));
  }
}

EvaluationConfig RunConfig::evaluation() const {
  return EvaluationConfig{threshold, positives, rank_weight_mode, threads};
}

namespace {

std::string_view row_type(const FusionResult& row) {
  return row.fusion_type ? to_string(*row.fusion_type) : "single";
}

std::string_view row_weighting(const FusionResult& row) {
  return row.weighting ? to_string(*row.weighting) : "none";
}

double four_decimals(double x) { return std::round(x * 1e4) / 1e4; }

}  // namespace

std::string emit_leaderboard(const Leaderboard& board, OutputFormat format) {
  if (format == OutputFormat::csv) {
    std::string out = "case,fusion_type,weighting,accuracy\n";
    for (const auto& row : board.rows) {
      out += fmt::format("{},{},{},{:.4f}\n", row.name, row_type(row), row_weighting(row),
                         row.accuracy);
    }
    return out;
  }

  nlohmann::ordered_json doc;
  doc["instances"] = board.instances;
  doc["positives"] = board.positives;
  doc["systems"] = board.system_ids;
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : board.rows) {
    rows.push_back({{"case", row.name},
                    {"fusion_type", row_type(row)},
                    {"weighting", row_weighting(row)},
                    {"accuracy", four_decimals(row.accuracy)}});
  }
  doc["warnings"] = board.warnings;
  return doc.dump(2) + "\n";
}

std::string emit_rsc(std::span<const ScoringSystem> systems, std::span<const RscCurve> curves) {
  if (systems.size() != curves.size()) {
    throw InputError(fmt::format("{} systems given with {} RSC curves", systems.size(), curves.size()));
  }
  std::string out = "system,rank_position,normalized_score\n";
  for (std::size_t s = 0; s < systems.size(); ++s) {
    const auto values = curves[s].values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      out += fmt::format("{},{},{}\n", systems[s].id(), i + 1, values[i]);
    }
  }
  return out;
}

std::string emit_diversity_report(std::span<const ScoringSystem> systems, const CdMatrix& matrix,
                                  std::span<const double> strengths, OutputFormat format) {
  const std::size_t t = systems.size();
  if (matrix.size() != t || strengths.size() != t) {
    throw InputError("diversity report: systems, matrix and strengths disagree in size");
  }

  if (format == OutputFormat::csv) {
    std::string out = "system";
    for (const auto& s : systems) out += "," + s.id();
    out += ",ds\n";
    for (std::size_t i = 0; i < t; ++i) {
      out += systems[i].id();
      for (std::size_t j = 0; j < t; ++j) out += fmt::format(",{}", matrix(i, j));
      out += fmt::format(",{}\n", strengths[i]);
    }
    return out;
  }

  nlohmann::ordered_json doc;
  auto& ids = doc["systems"] = nlohmann::ordered_json::array();
  for (const auto& s : systems) ids.push_back(s.id());
  auto& cd = doc["cd"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < t; ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < t; ++j) row.push_back(matrix(i, j));
    cd.push_back(std::move(row));
  }
  doc["ds"] = std::vector<double>(strengths.begin(), strengths.end());
  return doc.dump(2) + "\n";
}

}  // namespace cfa
