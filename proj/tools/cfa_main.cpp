// Command-line front end for the fusion engine.
//
//   cfa fuse <scores.csv> [--out F] [--format csv|json] [--rank-weight-mode inverse|direct]
//            [--normalize] [--threshold 0.5] [--positives P] [--threads N]
//   cfa diversity <scores.csv> [--out F] [--format csv|json] [--normalize]
//   cfa rsc <scores.csv> [--out F] [--normalize]
//   cfa selfcheck [--seed S]
//
// Exit codes: 0 success, 1 input contract violation, 2 internal invariant failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cfa/diversity.hpp"
#include "cfa/errors.hpp"
#include "cfa/evaluation.hpp"
#include "cfa/io.hpp"
#include "cfa/selfcheck.hpp"

namespace {

constexpr int kInputError = 1;
constexpr int kInvariantError = 2;

void write_output(const std::string& bytes, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(bytes.data(), 1, bytes.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cfa::InputError(fmt::format("cannot write '{}'", path));
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void report_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) fmt::print(stderr, "warning: {}\n", w);
}

struct Options {
  std::string scores;
  std::string out;
  std::string format = "csv";
  std::string rank_weight_mode = "inverse";
  std::size_t positives = 0;
  cfa::RunConfig config;
};

int run_fuse(const Options& opts, bool positives_given) {
  cfa::RunConfig config = opts.config;
  config.format = cfa::parse_output_format(opts.format);
  config.rank_weight_mode = cfa::parse_rank_weight_mode(opts.rank_weight_mode);
  if (positives_given) config.positives = opts.positives;
  config.validate();

  auto loaded = cfa::load_scores(opts.scores, config.normalize);
  report_warnings(loaded.warnings);
  const auto board = cfa::run_all(loaded.systems, loaded.labels, config.evaluation());
  report_warnings(board.warnings);
  write_output(cfa::emit_leaderboard(board, config.format), opts.out);
  return 0;
}

int run_diversity(const Options& opts) {
  const auto format = cfa::parse_output_format(opts.format);
  auto loaded = cfa::load_scores(opts.scores, opts.config.normalize);
  report_warnings(loaded.warnings);

  std::vector<cfa::RscCurve> curves;
  for (const auto& s : loaded.systems) curves.push_back(cfa::rsc_curve(s, cfa::derive_rank(s)));
  const auto matrix = cfa::cd_matrix(curves);
  std::vector<std::size_t> all(loaded.systems.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const auto strengths = cfa::diversity_strength(matrix, all);
  write_output(cfa::emit_diversity_report(loaded.systems, matrix, strengths, format), opts.out);
  return 0;
}

int run_rsc(const Options& opts) {
  auto loaded = cfa::load_scores(opts.scores, opts.config.normalize);
  report_warnings(loaded.warnings);
  std::vector<cfa::RscCurve> curves;
  for (const auto& s : loaded.systems) curves.push_back(cfa::rsc_curve(s, cfa::derive_rank(s)));
  write_output(cfa::emit_rsc(loaded.systems, curves), opts.out);
  return 0;
}

int run_selfcheck(std::uint64_t seed) {
  bool all_passed = true;
  for (const auto& check : cfa::run_selfcheck(seed)) {
    fmt::print("[{}] {}: {}\n", check.passed ? "PASS" : "FAIL", check.name, check.detail);
    all_passed = all_passed && check.passed;
  }
  return all_passed ? 0 : kInvariantError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial fusion of scoring systems: RSC curves, cognitive diversity, "
               "score/rank fusion and exhaustive subset leaderboards"};
  app.require_subcommand(1);

  Options opts;
  std::uint64_t seed = opts.config.seed;

  auto* fuse = app.add_subcommand("fuse", "Evaluate every single system and fusion case");
  fuse->add_option("scores", opts.scores, "Scores CSV (item_id,label,<systems...>)")->required()->check(CLI::ExistingFile);
  fuse->add_option("--out", opts.out, "Output file (default: stdout)");
  fuse->add_option("--format", opts.format, "Leaderboard format")->check(CLI::IsMember({"csv", "json"}));
  fuse->add_option("--rank-weight-mode", opts.rank_weight_mode,
                   "Weight coefficient in rank fusion: inverse (1/w) or direct (w)")
      ->check(CLI::IsMember({"inverse", "direct"}));
  fuse->add_flag("--normalize", opts.config.normalize, "Min-max normalize every score column");
  fuse->add_option("--threshold", opts.config.threshold, "Score threshold for approval")->check(CLI::Range(0.0, 1.0));
  auto* positives = fuse->add_option("--positives", opts.positives,
                                     "Positive count for rank thresholding (default: from labels)");
  fuse->add_option("--threads", opts.config.threads, "Worker threads for the sweep")->check(CLI::Range(1, 64));

  auto* diversity = app.add_subcommand("diversity", "Emit the CD matrix and diversity strengths");
  diversity->add_option("scores", opts.scores, "Scores CSV")->required()->check(CLI::ExistingFile);
  diversity->add_option("--out", opts.out, "Output file (default: stdout)");
  diversity->add_option("--format", opts.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  diversity->add_flag("--normalize", opts.config.normalize, "Min-max normalize every score column");

  auto* rsc = app.add_subcommand("rsc", "Emit rank-score characteristic curves in long format");
  rsc->add_option("scores", opts.scores, "Scores CSV")->required()->check(CLI::ExistingFile);
  rsc->add_option("--out", opts.out, "Output file (default: stdout)");
  rsc->add_flag("--normalize", opts.config.normalize, "Min-max normalize every score column");

  auto* selfcheck = app.add_subcommand("selfcheck", "Compare the engine with the naive reference on a seeded instance");
  selfcheck->add_option("--seed", seed, "Seed for the random instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*fuse) return run_fuse(opts, positives->count() > 0);
    if (*diversity) return run_diversity(opts);
    if (*rsc) return run_rsc(opts);
    if (*selfcheck) return run_selfcheck(seed);
  } catch (const cfa::InputError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kInputError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "internal error: {}\n", e.what());
    return kInvariantError;
  }
  return kInputError;
}
