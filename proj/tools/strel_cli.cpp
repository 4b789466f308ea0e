// strel: featurize sentence pairs, build cross-lingual train sets, run the
// track protocols and score prediction files.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "strel/corpus.hpp"
#include "strel/errors.hpp"
#include "strel/featurize.hpp"
#include "strel/metrics.hpp"
#include "strel/pairsim.hpp"
#include "strel/pipeline.hpp"
#include "strel/scatter.hpp"
#include "strel/tokenize.hpp"

namespace fs = std::filesystem;

namespace {

struct Aligned {
  std::vector<double> gold;
  std::vector<double> pred;
};

// Joins a gold dataset with a prediction file by PairID.
Aligned align(const fs::path& gold_path, const fs::path& pred_path) {
  const strel::PairDataset gold = strel::load_dataset(gold_path, true);
  std::map<std::string, double> by_id;
  for (const auto& p : strel::read_predictions(pred_path)) {
    if (!by_id.emplace(p.pair_id, p.score).second) {
      throw strel::IntegrityError("duplicate PairID '" + p.pair_id + "' in " + pred_path.string());
    }
  }
  if (by_id.size() != gold.size()) {
    throw strel::AlignmentError("gold has " + std::to_string(gold.size()) + " pairs, predictions " +
                                std::to_string(by_id.size()));
  }
  Aligned out;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto it = by_id.find(gold.pairs[i].pair_id);
    if (it == by_id.end()) {
      throw strel::AlignmentError("no prediction for pair '" + gold.pairs[i].pair_id + "'");
    }
    out.gold.push_back((*gold.gold)[i]);
    out.pred.push_back(it->second);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic textual relatedness pipelines"};
  app.require_subcommand(1);

  // featurize
  auto* feat = app.add_subcommand("featurize", "Embed a dataset with tf-idf or PPMI");
  std::string method = "tfidf";
  fs::path fit_path, data_path, emb_out, vocab_out, features_out;
  std::string mode_name = "rich";
  std::size_t min_df = 1, window = 2;
  feat->add_option("--method", method, "tfidf or ppmi")->check(CLI::IsMember({"tfidf", "ppmi"}));
  feat->add_option("--fit", fit_path, "CSV whose sentences fit the vocabulary")->required();
  feat->add_option("--data", data_path, "CSV to embed")->required();
  feat->add_option("--out", emb_out, "embedding TSV output")->required();
  feat->add_option("--vocab-out", vocab_out, "vocabulary TSV output");
  feat->add_option("--features-out", features_out, "pair features CSV output");
  feat->add_option("--mode", mode_name, "pair feature mode: rich or cosine_only");
  feat->add_option("--min-df", min_df, "minimum document frequency")->check(CLI::PositiveNumber);
  feat->add_option("--window", window, "PPMI window")->check(CLI::PositiveNumber);

  // merge-train
  auto* merge = app.add_subcommand("merge-train", "Merge other-language train sets");
  std::string target;
  std::vector<std::string> merge_sources;
  fs::path merge_out;
  merge->add_option("--target", target, "target language code")->required();
  merge->add_option("--source", merge_sources, "<lang>=<train.csv>, repeatable")->required();
  merge->add_option("--out", merge_out, "merged CSV output")->required();

  // run
  auto* run = app.add_subcommand("run", "Run a track protocol from a config file");
  std::string track_name;
  fs::path config_path, run_out;
  run->add_option("--track", track_name, "a, b or c")
      ->required()
      ->check(CLI::IsMember({"a", "b", "c", "A", "B", "C"}));
  run->add_option("--config", config_path, "key=value config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", run_out, "output directory (overrides output_dir)");

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Spearman correlation of predictions vs gold");
  fs::path gold_path, pred_path;
  eval->add_option("--gold", gold_path, "gold CSV with Score column")->required()->check(CLI::ExistingFile);
  eval->add_option("--pred", pred_path, "PairID,Pred_Score CSV")->required()->check(CLI::ExistingFile);

  // scatter
  auto* scatter = app.add_subcommand("scatter", "Gold vs predicted scatter (CSV + SVG)");
  fs::path scatter_out;
  std::string title;
  scatter->add_option("--gold", gold_path, "gold CSV with Score column")->required()->check(CLI::ExistingFile);
  scatter->add_option("--pred", pred_path, "PairID,Pred_Score CSV")->required()->check(CLI::ExistingFile);
  scatter->add_option("--out", scatter_out, "output stem; writes <stem>.csv and <stem>.svg")->required();
  scatter->add_option("--title", title, "plot title");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*feat) {
      const auto fit = strel::load_dataset(fit_path, false);
      const auto data = strel::load_dataset(data_path, false);
      const auto docs = strel::sentence_corpus(fit);
      strel::Vocabulary vocab = strel::fit_vocab(docs, min_df);
      if (!vocab_out.empty()) vocab.save(vocab_out);
      const strel::EmbeddingSet emb =
          method == "tfidf" ? strel::tfidf_embed(data, vocab)
                            : strel::ppmi_embed(data, strel::fit_ppmi(docs, std::move(vocab), window));
      emb.save(emb_out);
      if (!features_out.empty()) {
        strel::build_pair_features(data, emb, strel::parse_feature_mode(mode_name)).save_csv(features_out);
      }
      std::cerr << "wrote " << emb.size() << " vectors of dim " << emb.dim() << " to " << emb_out
                << '\n';
    } else if (*merge) {
      std::vector<strel::PairDataset> sources;
      for (const auto& spec : merge_sources) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) {
          throw strel::ConfigError("--source expects <lang>=<path>, got '" + spec + "'");
        }
        strel::LoadOptions opt;
        opt.language = spec.substr(0, eq);
        opt.split = strel::Split::train;
        sources.push_back(strel::load_dataset(spec.substr(eq + 1), true, opt));
      }
      const auto merged = strel::merge_train_sets(sources, target);
      strel::write_dataset(merged, merge_out);
      std::cout << merged.size() << '\n';
    } else if (*run) {
      strel::RunConfig cfg = strel::RunConfig::load(config_path);
      if (strel::parse_track(track_name) != cfg.track) {
        throw strel::ConfigError("--track " + track_name + " disagrees with config track " +
                                 std::string(strel::to_string(cfg.track)));
      }
      if (!run_out.empty()) cfg.output_dir = run_out;
      const strel::RunReport report = strel::run_track(cfg);
      strel::write_run_outputs(report, cfg.output_dir);
      std::cout << report.to_json()["ensemble"].dump(2) << '\n';
    } else if (*eval) {
      const Aligned a = align(gold_path, pred_path);
      const auto rep = strel::spearman(a.pred, a.gold);
      nlohmann::ordered_json j{{"n", rep.n}};
      j["spearman"] = rep.spearman ? nlohmann::ordered_json(*rep.spearman) : nlohmann::ordered_json(nullptr);
      std::cout << j.dump() << '\n';
    } else if (*scatter) {
      const Aligned a = align(gold_path, pred_path);
      strel::emit_scatter(a.gold, a.pred, scatter_out, title);
    }
  } catch (const strel::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
