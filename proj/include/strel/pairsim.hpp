#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "strel/corpus.hpp"
#include "strel/featurize.hpp"

namespace strel {

// dot(a,b) / (|a| |b|), clamped to [-1,1]; 0 when either vector is zero.
double cosine(std::span<const double> a, std::span<const double> b);

enum class FeatureMode { cosine_only, rich };

std::string_view to_string(FeatureMode mode);
FeatureMode parse_feature_mode(std::string_view text);

// One row per pair. Rich mode appends |a-b| and a*b element-wise after the
// cosine column.
struct PairFeatures {
  std::string provenance;
  std::vector<std::string> feature_names;
  Eigen::MatrixXd matrix;
  std::size_t cosine_col = 0;

  std::size_t rows() const { return static_cast<std::size_t>(matrix.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(matrix.cols()); }
  Eigen::VectorXd cosines() const { return matrix.col(static_cast<Eigen::Index>(cosine_col)); }

  // Header = feature names, one row per pair.
  void save_csv(const std::filesystem::path& path) const;
};

PairFeatures build_pair_features(const PairDataset& dataset, const EmbeddingSet& emb,
                                 FeatureMode mode);

}  // namespace strel
