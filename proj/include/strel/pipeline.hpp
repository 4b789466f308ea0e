#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "strel/corpus.hpp"
#include "strel/ensemble.hpp"
#include "strel/metrics.hpp"
#include "strel/pairsim.hpp"
#include "strel/regress.hpp"

namespace strel {

enum class Track { a, b, c };

std::string_view to_string(Track track);
Track parse_track(std::string_view text);

enum class SourceKind { tfidf, ppmi, external };

// One embedding route. External sources read one or more embedding TSV files
// that together cover every sentence the run touches.
struct SourceSpec {
  SourceKind kind = SourceKind::tfidf;
  std::string name;
  std::vector<std::filesystem::path> paths;

  std::string label() const;
  // `tfidf`, `ppmi` or `external:<name>:<path>[,<path>...]`.
  static SourceSpec parse(std::string_view text);
};

struct MergeSource {
  std::string language;
  std::filesystem::path path;
};

struct RegressorSettings {
  double alpha = 0.1;
  double l1_ratio = 0.5;
  double tol = 1e-6;
  std::size_t max_iter = 1000;
  // Candidate alphas scored by dev Spearman; empty disables the search.
  std::vector<double> alpha_grid;
};

struct RunConfig {
  Track track = Track::a;
  std::string language;
  std::optional<std::filesystem::path> train;
  std::optional<std::filesystem::path> dev;
  std::optional<std::filesystem::path> test;
  std::vector<MergeSource> merge;
  std::vector<SourceSpec> sources;
  std::optional<FeatureMode> feature_mode;
  RegressorSettings regressor;
  std::optional<EnsembleRule> ensemble_rule;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;
  std::size_t min_df = 1;
  std::size_t ppmi_window = 2;
  std::vector<std::string> separators = {"\n", "\t"};

  FeatureMode effective_feature_mode() const;
  EnsembleRule effective_ensemble_rule() const;

  // Throws ConfigError when required inputs for the track are missing.
  void validate() const;

  // Flat `key = value` file; `source` and `merge` may repeat. Relative paths
  // resolve against the directory of the config file.
  static RunConfig load(const std::filesystem::path& path);
  static RunConfig parse(std::string_view text, const std::filesystem::path& base_dir = {});

  nlohmann::ordered_json to_json() const;
};

struct MemberResult {
  std::string name;
  std::string source;
  std::string regressor;  // ols, elasticnet or cosine
  bool ok = false;
  std::string error;
  std::optional<double> alpha;
  std::optional<CorrelationReport> dev;
  std::optional<CorrelationReport> test;
  double weight = 0.0;
  std::vector<double> dev_preds;
  std::vector<double> test_preds;
};

struct RunReport {
  RunConfig config;
  PairDataset dev;
  PairDataset test;
  std::size_t train_size = 0;
  std::map<std::string, std::size_t> train_composition;
  std::vector<MemberResult> members;
  EnsembleSpec ensemble;
  std::vector<double> dev_preds;
  std::vector<double> test_preds;
  std::optional<CorrelationReport> ensemble_dev;
  std::optional<CorrelationReport> ensemble_test;
  std::map<std::string, double> timing_seconds;

  // Deterministic report; timing is kept out of it.
  nlohmann::ordered_json to_json() const;
};

RunReport run_track_a(const RunConfig& cfg);
RunReport run_track_b(const RunConfig& cfg);
RunReport run_track_c(const RunConfig& cfg);
RunReport run_track(const RunConfig& cfg);

// Writes report.json, timing.json, per-member and ensemble prediction CSVs
// and, where gold exists, scatter CSV/SVG pairs under `dir`.
void write_run_outputs(const RunReport& report, const std::filesystem::path& dir);

}  // namespace strel
