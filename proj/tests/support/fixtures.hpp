#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "strel/corpus.hpp"

namespace strel::fixtures {

// Train sizes of the supervised-track languages.
inline const std::map<std::string, std::size_t>& track_a_train_sizes() {
  static const std::map<std::string, std::size_t> sizes{
      {"arq", 1261}, {"amh", 992}, {"eng", 5500}, {"hau", 1736}, {"kin", 778},
      {"mar", 1200}, {"ary", 924}, {"esp", 1562}, {"tel", 1170}};
  return sizes;
}

struct MergeRow {
  std::string target;
  std::vector<std::string> sources;
  std::size_t published_train_size;
};

// Cross-lingual train composition as published, in the published source order.
inline const std::vector<MergeRow>& track_c_merge_table() {
  static const std::vector<MergeRow> rows{
      {"afr", {"amh", "eng", "esp", "arq", "ary"}, 10239},
      {"arq", {"amh", "hau", "esp", "eng", "ary"}, 10714},
      {"amh", {"eng", "hau", "esp", "arq", "ary"}, 10983},
      {"eng", {"arq", "ary", "mar", "esp", "tel"}, 6117},
      {"hau", {"amh", "esp", "arq", "ary", "eng"}, 10239},
      {"hin", {"esp", "eng", "mar", "ary", "tel"}, 10356},
      {"ind", {"ary", "eng", "mar", "esp", "tel"}, 5356},
      {"kin", {"amh", "esp", "ary", "arq", "eng"}, 10239},
      {"arb", {"amh", "eng", "arq", "esp", "ary"}, 10239},
      {"ary", {"amh", "hau", "eng", "esp", "arq"}, 11051},
      {"pan", {"arq", "esp", "mar", "eng", "tel"}, 10693},
      {"esp", {"arq", "ary", "mar", "eng", "tel"}, 10055},
  };
  return rows;
}

// In-memory train set of `n` short pairs for `language`.
PairDataset sized_train_set(const std::string& language, std::size_t n);

// Fresh, empty directory under the system temp dir; removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

struct SyntheticOptions {
  std::uint64_t seed = 7;
  std::size_t n_train = 300;
  std::size_t n_dev = 120;
  std::size_t n_test = 120;
  std::size_t vocab_size = 120;
  double noise = 0.05;
  std::string language = "syn";
};

// Sentence pairs whose gold score is a noisy increasing function of the
// Jaccard overlap of their word sets.
struct SyntheticCorpus {
  PairDataset train, dev, test;
  std::vector<std::string> words;
};

SyntheticCorpus make_overlap_corpus(const SyntheticOptions& opt);

// Deterministic toy sentence encoder: each word maps to a seeded Gaussian
// vector; a sentence is the mean of its word vectors plus Gaussian noise.
// Writes one embedding TSV covering every sentence of the given datasets.
void write_encoder_embeddings(const std::vector<const PairDataset*>& datasets, std::size_t dim,
                              std::uint64_t seed, double noise, const std::filesystem::path& out);

// Writes train/dev/test CSVs to `dir` as train.csv, dev.csv, test.csv.
void write_splits(const SyntheticCorpus& corpus, const std::filesystem::path& dir);

}  // namespace strel::fixtures
