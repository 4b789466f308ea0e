#include "strel/tokenize.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "strel/errors.hpp"

namespace strel {

TokenList tokenize(std::string_view text) {
  std::vector<std::vector<UChar32>> words(1);
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  for (int32_t i = 0; i < length;) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) c = 0xFFFD;
    if (u_isUWhiteSpace(c)) {
      if (!words.back().empty()) words.emplace_back();
      continue;
    }
    words.back().push_back(u_tolower(c));
  }

  TokenList tokens;
  for (const auto& w : words) {
    auto first = w.begin();
    auto last = w.end();
    while (first != last && u_ispunct(*first)) ++first;
    while (last != first && u_ispunct(*(last - 1))) --last;
    if (first == last) continue;
    std::string token;
    for (auto it = first; it != last; ++it) {
      uint8_t buf[U8_MAX_LENGTH];
      int32_t n = 0;
      U8_APPEND_UNSAFE(buf, n, *it);
      token.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq,
                       std::size_t n_docs)
    : terms_(std::move(terms)), doc_freq_(std::move(doc_freq)), n_docs_(n_docs) {
  if (terms_.size() != doc_freq_.size()) {
    throw AlignmentError("vocabulary terms and doc_freq differ in length");
  }
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (doc_freq_[i] < 1 || doc_freq_[i] > n_docs_) {
      throw ValidationError("doc_freq of '" + terms_[i] + "' outside [1, n_docs]");
    }
    if (!index_.emplace(terms_[i], i).second) {
      throw IntegrityError("duplicate vocabulary term '" + terms_[i] + "'");
    }
  }
}

std::optional<std::size_t> Vocabulary::find(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << "#n_docs " << n_docs_ << '\n';
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    out << terms_[i] << '\t' << doc_freq_[i] << '\n';
  }
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("#n_docs ")) {
    throw FormatError(path.string() + ": expected '#n_docs N' header");
  }
  auto parse_count = [&](std::string_view s, std::size_t lineno) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": bad count");
    }
    return v;
  };
  const std::size_t n_docs = parse_count(std::string_view(line).substr(8), 1);
  std::vector<std::string> terms;
  std::vector<std::size_t> df;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": missing tab");
    }
    terms.push_back(line.substr(0, tab));
    df.push_back(parse_count(std::string_view(line).substr(tab + 1), lineno));
  }
  return Vocabulary(std::move(terms), std::move(df), n_docs);
}

Vocabulary fit_vocab(std::span<const TokenList> corpus, std::size_t min_df) {
  if (corpus.empty()) throw ValidationError("cannot fit a vocabulary on an empty corpus");
  if (min_df < 1) throw ConfigError("min_df must be at least 1");

  std::map<std::string, std::size_t> df;
  for (const auto& doc : corpus) {
    std::set<std::string_view> distinct(doc.begin(), doc.end());
    for (auto term : distinct) ++df[std::string(term)];
  }
  std::vector<std::string> terms;
  std::vector<std::size_t> counts;
  for (auto& [term, count] : df) {
    if (count < min_df) continue;
    terms.push_back(term);
    counts.push_back(count);
  }
  if (terms.empty()) {
    throw ValidationError("vocabulary is empty after applying min_df=" + std::to_string(min_df));
  }
  return Vocabulary(std::move(terms), std::move(counts), corpus.size());
}

}  // namespace strel
