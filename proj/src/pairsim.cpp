#include "strel/pairsim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "strel/errors.hpp"

namespace strel {

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw AlignmentError("cosine of vectors with dims " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  double dot = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(aa) * std::sqrt(bb)), -1.0, 1.0);
}

std::string_view to_string(FeatureMode mode) {
  return mode == FeatureMode::rich ? "rich" : "cosine_only";
}

FeatureMode parse_feature_mode(std::string_view text) {
  if (text == "rich") return FeatureMode::rich;
  if (text == "cosine_only" || text == "cosine") return FeatureMode::cosine_only;
  throw ConfigError("unknown feature mode '" + std::string(text) + "'");
}

PairFeatures build_pair_features(const PairDataset& dataset, const EmbeddingSet& emb,
                                 FeatureMode mode) {
  emb.require_coverage(dataset);
  const std::size_t dim = emb.dim();
  const std::size_t width = mode == FeatureMode::rich ? 1 + 2 * dim : 1;

  PairFeatures f;
  f.provenance = emb.provenance();
  f.cosine_col = 0;
  f.feature_names.reserve(width);
  f.feature_names.push_back("cos");
  if (mode == FeatureMode::rich) {
    for (std::size_t k = 0; k < dim; ++k) f.feature_names.push_back("absdiff_" + std::to_string(k));
    for (std::size_t k = 0; k < dim; ++k) f.feature_names.push_back("prod_" + std::to_string(k));
  }
  f.matrix.resize(static_cast<Eigen::Index>(dataset.size()), static_cast<Eigen::Index>(width));

  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& id = dataset.pairs[i].pair_id;
    const auto a = emb.at(sentence_key(id, Side::a));
    const auto b = emb.at(sentence_key(id, Side::b));
    const auto r = static_cast<Eigen::Index>(i);
    f.matrix(r, 0) = cosine(a, b);
    if (mode == FeatureMode::rich) {
      for (std::size_t k = 0; k < dim; ++k) {
        const auto c = static_cast<Eigen::Index>(k);
        f.matrix(r, 1 + c) = std::abs(a[k] - b[k]);
        f.matrix(r, 1 + static_cast<Eigen::Index>(dim) + c) = a[k] * b[k];
      }
    }
  }
  return f;
}

void PairFeatures::save_csv(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  for (std::size_t j = 0; j < feature_names.size(); ++j) {
    out << (j ? "," : "") << feature_names[j];
  }
  out << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      const auto res = std::to_chars(buf, buf + sizeof buf, matrix(i, j));
      if (j) out << ',';
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

}  // namespace strel
