#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "strel/errors.hpp"
#include "strel/metrics.hpp"
#include "strel/pairsim.hpp"

using namespace strel;

TEST(Cosine, Examples) {
  const std::vector<double> a{1, 2}, b{2, 1}, x{1, 0}, y{0, 3}, z{0, 0};
  EXPECT_DOUBLE_EQ(cosine(a, a), 1.0);
  EXPECT_DOUBLE_EQ(cosine(x, y), 0.0);
  EXPECT_NEAR(cosine(a, b), 0.8, 1e-15);
  EXPECT_EQ(cosine(a, z), 0.0);
  EXPECT_EQ(cosine(z, z), 0.0);
  const std::vector<double> three{1, 2, 3};
  EXPECT_THROW(cosine(a, three), AlignmentError);
}

TEST(Cosine, SymmetricAndScaleInvariant) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0, 1);
  std::uniform_real_distribution<double> k(0.01, 100);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> a(1 + t % 17), b(a.size());
    for (double& v : a) v = g(rng);
    for (double& v : b) v = g(rng);
    EXPECT_EQ(cosine(a, b), cosine(b, a));
    const double s = k(rng);
    std::vector<double> ka = a;
    for (double& v : ka) v *= s;
    EXPECT_NEAR(cosine(ka, b), cosine(a, b), 1e-12);
    EXPECT_LE(std::abs(cosine(a, b)), 1.0);
  }
}

namespace {

PairDataset two_pairs() {
  PairDataset ds;
  ds.pairs = {{"same", "x", "x"}, {"diff", "y", "z"}};
  return ds;
}

}  // namespace

TEST(PairFeatures, RichIdenticalSentences) {
  const auto ds = two_pairs();
  EmbeddingSet emb("test", 2);
  emb.add("same#a", {0.6, 0.8});
  emb.add("same#b", {0.6, 0.8});
  emb.add("diff#a", {1.0, 0.0});
  emb.add("diff#b", {0.0, 0.0});
  const auto f = build_pair_features(ds, emb, FeatureMode::rich);
  ASSERT_EQ(f.rows(), 2u);
  ASSERT_EQ(f.cols(), 5u);
  EXPECT_EQ(f.feature_names,
            (std::vector<std::string>{"cos", "absdiff_0", "absdiff_1", "prod_0", "prod_1"}));
  EXPECT_NEAR(f.matrix(0, 0), 1.0, 1e-15);
  EXPECT_EQ(f.matrix(0, 1), 0.0);
  EXPECT_EQ(f.matrix(0, 2), 0.0);

  const auto c = build_pair_features(ds, emb, FeatureMode::cosine_only);
  ASSERT_EQ(c.cols(), 1u);
  EXPECT_EQ(c.matrix(1, 0), 0.0);  // zero-vector sentence
}

TEST(PairFeatures, RandomRichRowsMatchElementwise) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0, 1);
  PairDataset ds;
  EmbeddingSet emb("rand", 2);
  std::vector<std::array<double, 4>> raw;
  for (int i = 0; i < 25; ++i) {
    const std::string id = "r" + std::to_string(i);
    ds.pairs.push_back({id, "s", "t"});
    std::array<double, 4> v{g(rng), g(rng), g(rng), g(rng)};
    raw.push_back(v);
    emb.add(id + "#a", {v[0], v[1]});
    emb.add(id + "#b", {v[2], v[3]});
  }
  const auto f = build_pair_features(ds, emb, FeatureMode::rich);
  for (int i = 0; i < 25; ++i) {
    const auto& v = raw[static_cast<std::size_t>(i)];
    const double cos = (v[0] * v[2] + v[1] * v[3]) /
                       (std::hypot(v[0], v[1]) * std::hypot(v[2], v[3]));
    EXPECT_NEAR(f.matrix(i, 0), cos, 1e-12);
    EXPECT_DOUBLE_EQ(f.matrix(i, 1), std::abs(v[0] - v[2]));
    EXPECT_DOUBLE_EQ(f.matrix(i, 2), std::abs(v[1] - v[3]));
    EXPECT_DOUBLE_EQ(f.matrix(i, 3), v[0] * v[2]);
    EXPECT_DOUBLE_EQ(f.matrix(i, 4), v[1] * v[3]);
  }
}

TEST(PairFeatures, MissingKeyNamesPair) {
  auto ds = two_pairs();
  EmbeddingSet emb("partial", 1);
  emb.add("same#a", {1.0});
  emb.add("same#b", {1.0});
  emb.add("diff#a", {1.0});
  try {
    build_pair_features(ds, emb, FeatureMode::cosine_only);
    FAIL() << "expected CoverageError";
  } catch (const CoverageError& e) {
    EXPECT_NE(std::string(e.what()).find("diff"), std::string::npos);
  }
}

TEST(PairFeatures, CosineRankingInvariantToUniformScaling) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g(0, 1);
  PairDataset ds;
  EmbeddingSet emb("e", 5), scaled("e", 5);
  for (int i = 0; i < 40; ++i) {
    const std::string id = "q" + std::to_string(i);
    ds.pairs.push_back({id, "s", "t"});
    for (const char* side : {"#a", "#b"}) {
      std::vector<double> v(5);
      for (double& x : v) x = g(rng);
      std::vector<double> w = v;
      for (double& x : w) x *= 3.7;
      emb.add(id + side, v);
      scaled.add(id + side, w);
    }
  }
  const auto c1 = build_pair_features(ds, emb, FeatureMode::cosine_only).cosines();
  const auto c2 = build_pair_features(ds, scaled, FeatureMode::cosine_only).cosines();
  const std::vector<double> v1(c1.data(), c1.data() + c1.size()), v2(c2.data(), c2.data() + c2.size());
  EXPECT_EQ(average_ranks(v1), average_ranks(v2));
}
