#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace strel {

using TokenList = std::vector<std::string>;

// Lowercases (Unicode simple case mapping), splits on Unicode whitespace and
// strips leading/trailing punctuation (general category P) from each token.
// Invalid UTF-8 bytes are replaced with U+FFFD.
TokenList tokenize(std::string_view text);

// Lexicographically ordered term list with document frequencies.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq,
             std::size_t n_docs);

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::size_t n_docs() const { return n_docs_; }

  const std::vector<std::string>& terms() const { return terms_; }
  const std::string& term(std::size_t id) const { return terms_[id]; }
  std::size_t doc_freq(std::size_t id) const { return doc_freq_[id]; }
  std::optional<std::size_t> find(std::string_view token) const;

  // `#n_docs N` header, then `term<TAB>doc_freq` per line.
  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> doc_freq_;
  std::size_t n_docs_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
};

Vocabulary fit_vocab(std::span<const TokenList> corpus, std::size_t min_df = 1);

}  // namespace strel
