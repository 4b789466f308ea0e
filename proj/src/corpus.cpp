#include "strel/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <unordered_set>

#include "strel/csv.hpp"
#include "strel/errors.hpp"

namespace strel {
namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

double parse_decimal(std::string_view text, std::string_view what) {
  const std::string_view t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw FormatError("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

struct Header {
  std::optional<std::size_t> id, text, score;
};

Header read_header(csv::Reader& reader, const std::filesystem::path& path) {
  auto row = reader.next();
  if (!row) throw FormatError(path.string() + ": missing header");
  if (!row->empty() && row->front().starts_with("\xEF\xBB\xBF")) {
    row->front().erase(0, 3);
  }
  Header h;
  for (std::size_t i = 0; i < row->size(); ++i) {
    const std::string name = lower_ascii(trim((*row)[i]));
    if (name == "pairid") h.id = i;
    else if (name == "text") h.text = i;
    else if (name == "score") h.score = i;
  }
  return h;
}

bool blank(const std::vector<std::string>& row) {
  return std::all_of(row.begin(), row.end(), [](const std::string& f) { return trim(f).empty(); });
}

}  // namespace

std::string_view to_string(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
  }
  return "?";
}

Split parse_split(std::string_view text) {
  if (text == "train") return Split::train;
  if (text == "dev") return Split::dev;
  if (text == "test") return Split::test;
  throw ConfigError("unknown split '" + std::string(text) + "'");
}

bool has_score_column(const std::filesystem::path& path) {
  auto in = open_input(path);
  csv::Reader reader(in);
  return read_header(reader, path).score.has_value();
}

PairDataset load_dataset(const std::filesystem::path& path, bool has_gold,
                         const LoadOptions& options) {
  if (options.separators.empty()) throw ConfigError("no sentence separator configured");
  auto in = open_input(path);
  csv::Reader reader(in);
  const Header header = read_header(reader, path);
  if (!header.id) throw FormatError(path.string() + ": missing column 'PairID'");
  if (!header.text) throw FormatError(path.string() + ": missing column 'Text'");
  if (has_gold && !header.score) throw FormatError(path.string() + ": missing column 'Score'");

  PairDataset ds;
  ds.language = options.language;
  ds.split = options.split;
  if (has_gold) ds.gold.emplace();

  std::unordered_set<std::string> seen;
  while (auto row = reader.next()) {
    if (blank(*row)) continue;
    const std::string where = path.string() + ":" + std::to_string(reader.line());
    auto field = [&](std::size_t col) -> const std::string& {
      if (col >= row->size()) throw FormatError(where + ": row has too few columns");
      return (*row)[col];
    };

    SentencePair pair;
    pair.pair_id = std::string(trim(field(*header.id)));
    if (pair.pair_id.empty()) throw FormatError(where + ": empty PairID");
    if (!seen.insert(pair.pair_id).second) {
      throw IntegrityError(where + ": duplicate PairID '" + pair.pair_id + "'");
    }

    const std::string& text = field(*header.text);
    std::size_t cut = std::string::npos;
    std::size_t sep_len = 0;
    for (const auto& sep : options.separators) {
      cut = text.find(sep);
      if (cut != std::string::npos) {
        sep_len = sep.size();
        break;
      }
    }
    if (cut == std::string::npos) {
      throw FormatError(where + ": no sentence separator in pair '" + pair.pair_id + "'");
    }
    pair.sentence_a = std::string(trim(std::string_view(text).substr(0, cut)));
    pair.sentence_b = std::string(trim(std::string_view(text).substr(cut + sep_len)));
    if (pair.sentence_a.empty() || pair.sentence_b.empty()) {
      throw ValidationError(where + ": empty sentence in pair '" + pair.pair_id + "'");
    }

    if (has_gold) {
      const double score = parse_decimal(field(*header.score), "score");
      if (!(score >= 0.0 && score <= 1.0)) {
        throw ValidationError(where + ": score " + field(*header.score) + " of pair '" +
                              pair.pair_id + "' outside [0,1]");
      }
      ds.gold->push_back(score);
    }
    ds.pairs.push_back(std::move(pair));
  }
  return ds;
}

PairDataset merge_train_sets(std::span<const PairDataset> sources,
                             std::string_view target_language) {
  PairDataset merged;
  merged.language = std::string(target_language);
  merged.split = Split::train;
  const bool all_gold = std::all_of(sources.begin(), sources.end(),
                                    [](const PairDataset& d) { return d.has_gold(); });
  if (all_gold) merged.gold.emplace();

  std::unordered_set<std::string> seen;
  for (const auto& src : sources) {
    if (src.split != Split::train) {
      throw ConfigError("merge source '" + src.language + "' is not a train split");
    }
    if (src.language == target_language) {
      throw ConfigError("merge source language '" + src.language +
                        "' equals the target language");
    }
    for (std::size_t i = 0; i < src.pairs.size(); ++i) {
      SentencePair pair = src.pairs[i];
      pair.pair_id = src.language + ":" + pair.pair_id;
      if (!seen.insert(pair.pair_id).second) {
        throw IntegrityError("duplicate merged pair id '" + pair.pair_id + "'");
      }
      merged.pairs.push_back(std::move(pair));
      if (all_gold) merged.gold->push_back((*src.gold)[i]);
    }
  }
  return merged;
}

void write_predictions(const PairDataset& dataset, std::span<const double> preds,
                       const std::filesystem::path& path) {
  if (preds.size() != dataset.pairs.size()) {
    throw AlignmentError("prediction count " + std::to_string(preds.size()) +
                         " does not match pair count " + std::to_string(dataset.pairs.size()));
  }
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (!(preds[i] >= 0.0 && preds[i] <= 1.0)) {
      throw ValidationError("prediction for '" + dataset.pairs[i].pair_id + "' outside [0,1]");
    }
  }
  auto out = open_output(path);
  out << "PairID,Pred_Score\n";
  char buf[64];
  for (std::size_t i = 0; i < preds.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9g", preds[i]);
    out << csv::quote(dataset.pairs[i].pair_id) << ',' << buf << '\n';
  }
}

void write_dataset(const PairDataset& dataset, const std::filesystem::path& path,
                   std::string_view separator) {
  auto out = open_output(path);
  out << (dataset.has_gold() ? "PairID,Text,Score\n" : "PairID,Text\n");
  char buf[64];
  for (std::size_t i = 0; i < dataset.pairs.size(); ++i) {
    const auto& p = dataset.pairs[i];
    std::string text = p.sentence_a;
    text.append(separator);
    text.append(p.sentence_b);
    out << csv::quote(p.pair_id) << ',' << csv::quote(text);
    if (dataset.has_gold()) {
      std::snprintf(buf, sizeof buf, "%.17g", (*dataset.gold)[i]);
      out << ',' << buf;
    }
    out << '\n';
  }
}

std::vector<Prediction> read_predictions(const std::filesystem::path& path) {
  auto in = open_input(path);
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) throw FormatError(path.string() + ": missing header");
  std::optional<std::size_t> id_col, score_col;
  for (std::size_t i = 0; i < header->size(); ++i) {
    const std::string name = lower_ascii(trim((*header)[i]));
    if (name == "pairid") id_col = i;
    else if (name == "pred_score") score_col = i;
  }
  if (!id_col) throw FormatError(path.string() + ": missing column 'PairID'");
  if (!score_col) throw FormatError(path.string() + ": missing column 'Pred_Score'");

  std::vector<Prediction> preds;
  while (auto row = reader.next()) {
    if (blank(*row)) continue;
    if (std::max(*id_col, *score_col) >= row->size()) {
      throw FormatError(path.string() + ":" + std::to_string(reader.line()) +
                        ": row has too few columns");
    }
    preds.push_back({std::string(trim((*row)[*id_col])),
                     parse_decimal((*row)[*score_col], "Pred_Score")});
  }
  return preds;
}

}  // namespace strel
