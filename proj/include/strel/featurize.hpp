#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "strel/corpus.hpp"
#include "strel/tokenize.hpp"

namespace strel {

enum class Side { a, b };

// `<pair_id>#a` or `<pair_id>#b`.
std::string sentence_key(std::string_view pair_id, Side side);

// Dense sentence vectors of one fixed dimension, keyed by sentence_key().
// Keys keep insertion order so that saved files are deterministic.
class EmbeddingSet {
 public:
  EmbeddingSet(std::string provenance, std::size_t dim)
      : provenance_(std::move(provenance)), dim_(dim) {}

  const std::string& provenance() const { return provenance_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return keys_.size(); }
  const std::vector<std::string>& keys() const { return keys_; }

  // Throws IntegrityError on a duplicate key, FormatError on a wrong length
  // and ValidationError on a non-finite entry.
  void add(std::string key, std::vector<double> vec);

  bool contains(std::string_view key) const { return index_.count(std::string(key)) != 0; }
  // Throws CoverageError when the key is absent.
  std::span<const double> at(std::string_view key) const;

  // Checks that both sentences of every pair are present.
  void require_coverage(const PairDataset& dataset) const;

  // `#dim D` header, then `key<TAB>v1<TAB>...<TAB>vD` per row.
  void save(const std::filesystem::path& path) const;

 private:
  std::string provenance_;
  std::size_t dim_;
  std::vector<std::string> keys_;
  std::vector<std::vector<double>> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Token lists of every sentence in pair order: a0, b0, a1, b1, ...
std::vector<TokenList> sentence_corpus(const PairDataset& dataset);

// Smoothed idf: ln((1 + n_docs) / (1 + doc_freq)) + 1.
double smoothed_idf(std::size_t n_docs, std::size_t doc_freq);

// Raw-count tf times smoothed idf, L2-normalized. All-OOV sentences map to
// the zero vector.
std::vector<double> tfidf_vector(const TokenList& tokens, const Vocabulary& vocab);
EmbeddingSet tfidf_embed(const PairDataset& dataset, const Vocabulary& vocab);

// A term's PPMI row: (context column, value) pairs with value > 0, sorted by
// column.
using SparseRow = std::vector<std::pair<std::size_t, double>>;

struct PpmiModel {
  Vocabulary vocab;
  std::size_t window = 2;
  std::vector<SparseRow> rows;

  // PPMI(term, context), zero when absent.
  double value(std::size_t term, std::size_t context) const;
};

// Counts co-occurrences within `window` tokens on either side inside each
// token list; out-of-vocabulary tokens occupy positions but are not counted.
PpmiModel fit_ppmi(std::span<const TokenList> corpus, Vocabulary vocab, std::size_t window = 2);

// Mean of the PPMI rows of in-vocabulary tokens, L2-normalized.
std::vector<double> ppmi_vector(const TokenList& tokens, const PpmiModel& model);
EmbeddingSet ppmi_embed(const PairDataset& dataset, const PpmiModel& model);

EmbeddingSet load_external_embeddings(const std::filesystem::path& path, std::string_view name);

}  // namespace strel
