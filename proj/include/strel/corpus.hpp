#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace strel {

enum class Split { train, dev, test };

std::string_view to_string(Split split);
Split parse_split(std::string_view text);

struct SentencePair {
  std::string pair_id;
  std::string sentence_a;
  std::string sentence_b;
};

// Sentence pairs in source-file order, with optional gold relatedness scores
// in [0,1] aligned index-for-index with `pairs`.
struct PairDataset {
  std::string language;
  Split split = Split::train;
  std::vector<SentencePair> pairs;
  std::optional<std::vector<double>> gold;

  std::size_t size() const { return pairs.size(); }
  bool has_gold() const { return gold.has_value(); }
};

struct LoadOptions {
  std::string language;
  Split split = Split::train;
  // Tried in order; the first one present in a row splits it.
  std::vector<std::string> separators = {"\n", "\t"};
};

// Reads a `PairID,Text[,Score]` CSV. Column names are matched
// case-insensitively. `Score` must be present when `has_gold` is set and is
// ignored otherwise.
PairDataset load_dataset(const std::filesystem::path& path, bool has_gold,
                         const LoadOptions& options = {});

// True when the CSV header carries a `Score` column.
bool has_score_column(const std::filesystem::path& path);

// Concatenates train sets of other languages into a training set for
// `target_language`. Pair ids become `<source lang>:<original id>`.
PairDataset merge_train_sets(std::span<const PairDataset> sources,
                             std::string_view target_language);

// Writes a `PairID,Pred_Score` CSV with 9 significant digits per score.
void write_predictions(const PairDataset& dataset, std::span<const double> preds,
                       const std::filesystem::path& path);

// Writes a dataset back to `PairID,Text[,Score]` form, joining the two
// sentences with `separator`.
void write_dataset(const PairDataset& dataset, const std::filesystem::path& path,
                   std::string_view separator = "\n");

struct Prediction {
  std::string pair_id;
  double score = 0.0;
};

std::vector<Prediction> read_predictions(const std::filesystem::path& path);

}  // namespace strel
