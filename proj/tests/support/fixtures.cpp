#include "fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <unistd.h>

#include "strel/featurize.hpp"
#include "strel/tokenize.hpp"

namespace strel::fixtures {
namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string make_word(std::mt19937_64& rng) {
  static const char* syllables[] = {"ka", "lo", "mi", "nu", "re", "sa", "ti", "vo", "ze", "ba",
                                    "du", "fe", "go", "hi", "ju", "ke", "ly", "mo", "ne", "pa"};
  std::uniform_int_distribution<int> len(2, 3);
  std::uniform_int_distribution<int> pick(0, 19);
  std::string w;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) w += syllables[pick(rng)];
  return w;
}

std::string join(const std::vector<std::string>& words) {
  std::string s;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) s.push_back(' ');
    s += words[i];
  }
  return s;
}

}  // namespace

PairDataset sized_train_set(const std::string& language, std::size_t n) {
  PairDataset ds;
  ds.language = language;
  ds.split = Split::train;
  ds.gold.emplace();
  ds.pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ds.pairs.push_back({language + "-train-" + std::to_string(i), "sentence one", "sentence two"});
    ds.gold->push_back(static_cast<double>(i % 5) / 4.0);
  }
  return ds;
}

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("strel-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

SyntheticCorpus make_overlap_corpus(const SyntheticOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  SyntheticCorpus corpus;
  std::set<std::string> seen;
  while (corpus.words.size() < opt.vocab_size) {
    std::string w = make_word(rng);
    if (seen.insert(w).second) corpus.words.push_back(w);
  }
  std::vector<double> zipf(opt.vocab_size);
  for (std::size_t i = 0; i < zipf.size(); ++i) zipf[i] = 1.0 / std::pow(i + 1.0, 0.9);
  std::discrete_distribution<std::size_t> draw(zipf.begin(), zipf.end());
  std::uniform_int_distribution<int> length(6, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, opt.noise);

  auto make_split = [&](Split split, std::size_t n) {
    PairDataset ds;
    ds.language = opt.language;
    ds.split = split;
    ds.gold.emplace();
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::string> a;
      const int la = length(rng);
      for (int k = 0; k < la; ++k) a.push_back(corpus.words[draw(rng)]);
      const double keep = unit(rng);
      std::vector<std::string> b;
      for (const auto& w : a) {
        if (unit(rng) < keep) b.push_back(w);
      }
      const int lb = length(rng);
      while (static_cast<int>(b.size()) < lb) b.push_back(corpus.words[draw(rng)]);
      std::shuffle(b.begin(), b.end(), rng);

      const std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
      std::size_t inter = 0;
      for (const auto& w : sa) inter += sb.count(w);
      const double jaccard =
          static_cast<double>(inter) / static_cast<double>(sa.size() + sb.size() - inter);
      const double gold = std::clamp(0.1 + 0.85 * std::pow(jaccard, 0.7) + noise(rng), 0.0, 1.0);

      char id[64];
      std::snprintf(id, sizeof id, "%s-%s-%04zu", opt.language.c_str(),
                    std::string(to_string(split)).c_str(), i);
      ds.pairs.push_back({id, join(a), join(b)});
      ds.gold->push_back(gold);
    }
    return ds;
  };
  corpus.train = make_split(Split::train, opt.n_train);
  corpus.dev = make_split(Split::dev, opt.n_dev);
  corpus.test = make_split(Split::test, opt.n_test);
  return corpus;
}

void write_encoder_embeddings(const std::vector<const PairDataset*>& datasets, std::size_t dim,
                              std::uint64_t seed, double noise, const std::filesystem::path& out) {
  std::mt19937_64 noise_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto word_vec = [&](const std::string& w) {
    std::mt19937_64 rng(fnv1a(w, seed));
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(dim);
    for (double& x : v) x = g(rng);
    return v;
  };
  EmbeddingSet set("external:toy", dim);
  auto encode = [&](const std::string& text) {
    std::vector<double> v(dim, 0.0);
    const auto tokens = tokenize(text);
    for (const auto& t : tokens) {
      const auto wv = word_vec(t);
      for (std::size_t k = 0; k < dim; ++k) v[k] += wv[k] / static_cast<double>(tokens.size());
    }
    for (double& x : v) x += noise * gauss(noise_rng);
    return v;
  };
  for (const auto* ds : datasets) {
    for (const auto& p : ds->pairs) {
      set.add(sentence_key(p.pair_id, Side::a), encode(p.sentence_a));
      set.add(sentence_key(p.pair_id, Side::b), encode(p.sentence_b));
    }
  }
  set.save(out);
}

void write_splits(const SyntheticCorpus& corpus, const std::filesystem::path& dir) {
  write_dataset(corpus.train, dir / "train.csv");
  write_dataset(corpus.dev, dir / "dev.csv");
  write_dataset(corpus.test, dir / "test.csv");
}

}  // namespace strel::fixtures
