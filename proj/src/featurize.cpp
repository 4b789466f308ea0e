#include "strel/featurize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include "strel/errors.hpp"

namespace strel {
namespace {

void l2_normalize(std::vector<double>& v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  if (sq == 0.0) return;
  const double norm = std::sqrt(sq);
  for (double& x : v) x /= norm;
}

}  // namespace

std::string sentence_key(std::string_view pair_id, Side side) {
  std::string key(pair_id);
  key += side == Side::a ? "#a" : "#b";
  return key;
}

void EmbeddingSet::add(std::string key, std::vector<double> vec) {
  if (vec.size() != dim_) {
    throw FormatError("embedding '" + key + "' has " + std::to_string(vec.size()) +
                      " values, expected " + std::to_string(dim_));
  }
  for (double x : vec) {
    if (!std::isfinite(x)) throw ValidationError("embedding '" + key + "' has a non-finite value");
  }
  if (!index_.emplace(key, keys_.size()).second) {
    throw IntegrityError("duplicate embedding key '" + key + "'");
  }
  keys_.push_back(std::move(key));
  vectors_.push_back(std::move(vec));
}

std::span<const double> EmbeddingSet::at(std::string_view key) const {
  const auto it = index_.find(std::string(key));
  if (it == index_.end()) {
    throw CoverageError(provenance_ + ": no embedding for '" + std::string(key) + "'");
  }
  return vectors_[it->second];
}

void EmbeddingSet::require_coverage(const PairDataset& dataset) const {
  for (const auto& p : dataset.pairs) {
    for (Side s : {Side::a, Side::b}) {
      if (!contains(sentence_key(p.pair_id, s))) {
        throw CoverageError(provenance_ + ": pair '" + p.pair_id + "' has no embedding for " +
                            sentence_key(p.pair_id, s));
      }
    }
  }
}

void EmbeddingSet::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << "#dim " << dim_ << '\n';
  char buf[32];
  std::string line;
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    line = keys_[i];
    for (double x : vectors_[i]) {
      const auto res = std::to_chars(buf, buf + sizeof buf, x);
      line.push_back('\t');
      line.append(buf, res.ptr);
    }
    line.push_back('\n');
    out << line;
  }
}

std::vector<TokenList> sentence_corpus(const PairDataset& dataset) {
  std::vector<TokenList> docs;
  docs.reserve(2 * dataset.size());
  for (const auto& p : dataset.pairs) {
    docs.push_back(tokenize(p.sentence_a));
    docs.push_back(tokenize(p.sentence_b));
  }
  return docs;
}

double smoothed_idf(std::size_t n_docs, std::size_t doc_freq) {
  return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(doc_freq))) +
         1.0;
}

std::vector<double> tfidf_vector(const TokenList& tokens, const Vocabulary& vocab) {
  if (vocab.empty()) throw ValidationError("tf-idf needs a non-empty vocabulary");
  std::vector<double> v(vocab.size(), 0.0);
  for (const auto& t : tokens) {
    if (auto id = vocab.find(t)) v[*id] += 1.0;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) v[i] *= smoothed_idf(vocab.n_docs(), vocab.doc_freq(i));
  }
  l2_normalize(v);
  return v;
}

EmbeddingSet tfidf_embed(const PairDataset& dataset, const Vocabulary& vocab) {
  if (vocab.empty()) throw ValidationError("tf-idf needs a non-empty vocabulary");
  EmbeddingSet set("tfidf", vocab.size());
  for (const auto& p : dataset.pairs) {
    set.add(sentence_key(p.pair_id, Side::a), tfidf_vector(tokenize(p.sentence_a), vocab));
    set.add(sentence_key(p.pair_id, Side::b), tfidf_vector(tokenize(p.sentence_b), vocab));
  }
  return set;
}

double PpmiModel::value(std::size_t term, std::size_t context) const {
  const auto& row = rows.at(term);
  const auto it = std::lower_bound(row.begin(), row.end(), context,
                                   [](const auto& e, std::size_t c) { return e.first < c; });
  return it != row.end() && it->first == context ? it->second : 0.0;
}

PpmiModel fit_ppmi(std::span<const TokenList> corpus, Vocabulary vocab, std::size_t window) {
  if (corpus.empty()) throw ValidationError("cannot fit PPMI on an empty corpus");
  if (window < 1) throw ConfigError("PPMI window must be at least 1");
  if (vocab.empty()) throw ValidationError("PPMI needs a non-empty vocabulary");

  std::vector<std::map<std::size_t, double>> cooc(vocab.size());
  std::vector<std::optional<std::size_t>> ids;
  for (const auto& doc : corpus) {
    ids.clear();
    for (const auto& t : doc) ids.push_back(vocab.find(t));
    const std::size_t n = ids.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!ids[i]) continue;
      const std::size_t lo = i >= window ? i - window : 0;
      const std::size_t hi = std::min(n - 1, i + window);
      for (std::size_t j = lo; j <= hi; ++j) {
        if (j == i || !ids[j]) continue;
        cooc[*ids[i]][*ids[j]] += 1.0;
      }
    }
  }

  std::vector<double> count(vocab.size(), 0.0);
  double total = 0.0;
  for (std::size_t w = 0; w < cooc.size(); ++w) {
    for (const auto& [c, n] : cooc[w]) count[w] += n;
    total += count[w];
  }

  PpmiModel model{std::move(vocab), window, {}};
  model.rows.resize(cooc.size());
  for (std::size_t w = 0; w < cooc.size(); ++w) {
    for (const auto& [c, n] : cooc[w]) {
      const double pmi = std::log((n * total) / (count[w] * count[c]));
      if (pmi > 0.0) model.rows[w].emplace_back(c, pmi);
    }
  }
  return model;
}

std::vector<double> ppmi_vector(const TokenList& tokens, const PpmiModel& model) {
  std::vector<double> v(model.vocab.size(), 0.0);
  std::size_t used = 0;
  for (const auto& t : tokens) {
    const auto id = model.vocab.find(t);
    if (!id) continue;
    ++used;
    for (const auto& [c, x] : model.rows[*id]) v[c] += x;
  }
  if (used == 0) return v;
  for (double& x : v) x /= static_cast<double>(used);
  l2_normalize(v);
  return v;
}

EmbeddingSet ppmi_embed(const PairDataset& dataset, const PpmiModel& model) {
  EmbeddingSet set("ppmi", model.vocab.size());
  for (const auto& p : dataset.pairs) {
    set.add(sentence_key(p.pair_id, Side::a), ppmi_vector(tokenize(p.sentence_a), model));
    set.add(sentence_key(p.pair_id, Side::b), ppmi_vector(tokenize(p.sentence_b), model));
  }
  return set;
}

EmbeddingSet load_external_embeddings(const std::filesystem::path& path, std::string_view name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("#dim ")) {
    throw FormatError(path.string() + ":1: expected '#dim D' header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::size_t dim = 0;
  {
    const std::string_view s = std::string_view(line).substr(5);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), dim);
    if (ec != std::errc() || ptr != s.data() + s.size() || dim == 0) {
      throw FormatError(path.string() + ":1: bad dimension in header");
    }
  }

  EmbeddingSet set("external:" + std::string(name), dim);
  std::size_t lineno = 1;
  std::vector<double> vec;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw FormatError(where + ": missing key");
    vec.clear();
    std::size_t pos = tab + 1;
    while (pos <= line.size()) {
      auto end = line.find('\t', pos);
      if (end == std::string::npos) end = line.size();
      const char* first = line.data() + pos;
      const char* last = line.data() + end;
      double x = 0.0;
      const auto [ptr, ec] = std::from_chars(first, last, x);
      if (ec != std::errc() || ptr != last || first == last) {
        throw FormatError(where + ": cannot parse value '" + std::string(first, last) + "'");
      }
      if (!std::isfinite(x)) throw ValidationError(where + ": non-finite value");
      vec.push_back(x);
      pos = end + 1;
    }
    if (vec.size() != dim) {
      throw FormatError(where + ": " + std::to_string(vec.size()) + " values, header says " +
                        std::to_string(dim));
    }
    std::string key = line.substr(0, tab);
    if (set.contains(key)) throw IntegrityError(where + ": duplicate key '" + key + "'");
    set.add(std::move(key), vec);
  }
  return set;
}

}  // namespace strel
