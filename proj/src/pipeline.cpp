#include "strel/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>

#include "strel/errors.hpp"
#include "strel/featurize.hpp"
#include "strel/scatter.hpp"
#include "strel/tokenize.hpp"

namespace strel {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(ws) - first + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto end = s.find(sep, pos);
    out.emplace_back(trim(s.substr(pos, end == std::string_view::npos ? end : end - pos)));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

double to_double(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    const std::string s(value);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + std::string(key) + "': '" + std::string(value) +
                      "' is not a number");
  }
}

std::uint64_t to_count(std::string_view key, std::string_view value) {
  const double v = to_double(key, value);
  if (v < 0 || v != std::floor(v)) {
    throw ConfigError("config key '" + std::string(key) + "' expects a nonnegative integer");
  }
  return static_cast<std::uint64_t>(v);
}

std::string separator_name(const std::string& sep) {
  if (sep == "\n") return "newline";
  if (sep == "\t") return "tab";
  return sep;
}

std::string parse_separator(std::string_view s) {
  if (s == "newline" || s == "\\n") return "\n";
  if (s == "tab" || s == "\\t") return "\t";
  if (s.empty()) throw ConfigError("empty sentence separator");
  return std::string(s);
}

nlohmann::json score_json(const std::optional<CorrelationReport>& r) {
  if (!r || !r->spearman) return nullptr;
  return *r->spearman;
}

std::optional<CorrelationReport> evaluate(const PairDataset& ds, const std::vector<double>& preds) {
  if (!ds.has_gold() || ds.size() < 2) return std::nullopt;
  return spearman(preds, *ds.gold);
}

PairDataset strip_gold(PairDataset ds) {
  ds.gold.reset();
  return ds;
}

std::string file_safe(std::string s) {
  for (char& c : s) {
    if (c == ':' || c == '/' || c == '+' || c == ' ') c = '_';
  }
  return s;
}

LoadOptions load_options(const RunConfig& cfg, std::string language, Split split) {
  LoadOptions o;
  o.language = std::move(language);
  o.split = split;
  o.separators = cfg.separators;
  return o;
}

PairDataset load_split(const RunConfig& cfg, const std::filesystem::path& path, Split split,
                       bool require_gold) {
  const bool gold = require_gold || has_score_column(path);
  return load_dataset(path, gold, load_options(cfg, cfg.language, split));
}

// Sentence vectors for each split a member needs, built from one source.
struct SourceEmbeddings {
  std::optional<EmbeddingSet> train;
  std::optional<EmbeddingSet> dev;
  std::optional<EmbeddingSet> test;
};

EmbeddingSet load_external(const SourceSpec& src) {
  if (src.paths.empty()) throw ConfigError("external source '" + src.name + "' has no file");
  EmbeddingSet merged = load_external_embeddings(src.paths.front(), src.name);
  for (std::size_t i = 1; i < src.paths.size(); ++i) {
    const EmbeddingSet more = load_external_embeddings(src.paths[i], src.name);
    if (more.dim() != merged.dim()) {
      throw FormatError("external source '" + src.name + "': files disagree on dimension");
    }
    for (const auto& key : more.keys()) {
      const auto v = more.at(key);
      merged.add(key, std::vector<double>(v.begin(), v.end()));
    }
  }
  return merged;
}

// `fit_text` is the text the count-based routes learn their statistics from.
SourceEmbeddings embed_source(const RunConfig& cfg, const SourceSpec& src,
                              const std::vector<const PairDataset*>& fit_text,
                              const PairDataset* train, const PairDataset& dev,
                              const PairDataset& test) {
  SourceEmbeddings out;
  auto embed_all = [&](auto&& embed) {
    if (train) out.train = embed(*train);
    out.dev = embed(dev);
    out.test = embed(test);
  };
  if (src.kind == SourceKind::external) {
    EmbeddingSet all = load_external(src);
    embed_all([&](const PairDataset& ds) {
      all.require_coverage(ds);
      return all;
    });
    return out;
  }

  std::vector<TokenList> docs;
  for (const auto* ds : fit_text) {
    auto d = sentence_corpus(*ds);
    docs.insert(docs.end(), std::make_move_iterator(d.begin()), std::make_move_iterator(d.end()));
  }
  Vocabulary vocab = fit_vocab(docs, cfg.min_df);
  if (src.kind == SourceKind::tfidf) {
    embed_all([&](const PairDataset& ds) { return tfidf_embed(ds, vocab); });
  } else {
    const PpmiModel model = fit_ppmi(docs, std::move(vocab), cfg.ppmi_window);
    embed_all([&](const PairDataset& ds) { return ppmi_embed(ds, model); });
  }
  return out;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

struct Splits {
  const PairDataset& train;
  const PairDataset& dev;
  const PairDataset& test;
};

// Fits one regressor on train features and scores dev/test.
MemberResult fit_member(const RunConfig& cfg, const std::string& source, ModelKind kind,
                        const PairFeatures& train_f, const PairFeatures& dev_f,
                        const PairFeatures& test_f, const Splits& splits) {
  MemberResult m;
  m.source = source;
  m.regressor = std::string(to_string(kind));
  m.name = source + "+" + m.regressor;
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(
      splits.train.gold->data(), static_cast<Eigen::Index>(splits.train.gold->size()));

  auto score = [&](const FitModel& model) {
    auto dev = clip_unit(to_std(predict(model, dev_f.matrix)));
    auto test = clip_unit(to_std(predict(model, test_f.matrix)));
    return std::pair{std::move(dev), std::move(test)};
  };

  if (kind == ModelKind::ols) {
    auto [dev, test] = score(fit_ols(train_f.matrix, y));
    m.dev_preds = std::move(dev);
    m.test_preds = std::move(test);
  } else {
    ElasticNetOptions opt;
    opt.l1_ratio = cfg.regressor.l1_ratio;
    opt.tol = cfg.regressor.tol;
    opt.max_iter = cfg.regressor.max_iter;
    std::vector<double> alphas = cfg.regressor.alpha_grid;
    if (alphas.empty() || !splits.dev.has_gold()) alphas = {cfg.regressor.alpha};
    std::sort(alphas.begin(), alphas.end());
    std::optional<double> best_score;
    for (double alpha : alphas) {
      opt.alpha = alpha;
      auto [dev, test] = score(fit_elasticnet(train_f.matrix, y, opt));
      const auto rep = evaluate(splits.dev, dev);
      const double s = rep && rep->spearman ? *rep->spearman : -2.0;
      // strict improvement keeps the smallest alpha on ties
      if (!best_score || s > *best_score) {
        best_score = s;
        m.alpha = alpha;
        m.dev_preds = std::move(dev);
        m.test_preds = std::move(test);
      }
    }
  }
  m.ok = true;
  return m;
}

MemberResult failed_member(std::string source, std::string regressor, const std::string& why) {
  MemberResult m;
  m.source = std::move(source);
  m.regressor = std::move(regressor);
  m.name = m.source + "+" + m.regressor;
  m.ok = false;
  m.error = why;
  return m;
}

void finish_report(RunReport& rep, EnsembleRule rule) {
  std::vector<std::string> names;
  std::vector<std::optional<double>> scores;
  std::vector<std::vector<double>> dev_preds, test_preds;
  std::vector<std::size_t> alive;
  for (std::size_t i = 0; i < rep.members.size(); ++i) {
    auto& m = rep.members[i];
    if (!m.ok) continue;
    m.dev = evaluate(rep.dev, m.dev_preds);
    m.test = evaluate(rep.test, m.test_preds);
    alive.push_back(i);
    names.push_back(m.name);
    scores.push_back(m.dev ? m.dev->spearman : std::nullopt);
    dev_preds.push_back(m.dev_preds);
    test_preds.push_back(m.test_preds);
  }
  if (alive.empty()) {
    std::string why = "every ensemble member failed";
    if (!rep.members.empty()) why += ": " + rep.members.front().error;
    throw Error(why);
  }
  rep.ensemble = rule == EnsembleRule::dev_weighted ? dev_weighted_spec(names, scores)
                                                    : uniform_spec(names, scores);
  for (std::size_t k = 0; k < alive.size(); ++k) rep.members[alive[k]].weight = rep.ensemble.weights[k];
  rep.dev_preds = combine(rep.ensemble, dev_preds);
  rep.test_preds = combine(rep.ensemble, test_preds);
  rep.ensemble_dev = evaluate(rep.dev, rep.dev_preds);
  rep.ensemble_test = evaluate(rep.test, rep.test_preds);
}

// Shared by tracks A and C: every source yields an OLS and an ElasticNet member.
void run_supervised(RunReport& rep, const PairDataset& train) {
  const RunConfig& cfg = rep.config;
  const FeatureMode mode = cfg.effective_feature_mode();
  const Splits splits{train, rep.dev, rep.test};
  const PairDataset train_text = strip_gold(train);
  const std::vector<const PairDataset*> fit_text{&train_text};

  auto t0 = Clock::now();
  std::vector<std::future<std::vector<MemberResult>>> jobs;
  for (const auto& src : cfg.sources) {
    jobs.push_back(std::async(std::launch::async, [&, src]() -> std::vector<MemberResult> {
      const std::string label = src.label();
      std::optional<PairFeatures> tr, dv, te;
      try {
        SourceEmbeddings emb = embed_source(cfg, src, fit_text, &train_text, rep.dev, rep.test);
        tr = build_pair_features(train_text, *emb.train, mode);
        dv = build_pair_features(rep.dev, *emb.dev, mode);
        te = build_pair_features(rep.test, *emb.test, mode);
      } catch (const std::exception& e) {
        return {failed_member(label, "ols", e.what()), failed_member(label, "elasticnet", e.what())};
      }
      auto one = [&](ModelKind kind) {
        return std::async(std::launch::async, [&, kind]() {
          try {
            return fit_member(cfg, label, kind, *tr, *dv, *te, splits);
          } catch (const std::exception& e) {
            return failed_member(label, std::string(to_string(kind)), e.what());
          }
        });
      };
      auto en = one(ModelKind::elasticnet);
      auto ols = one(ModelKind::ols);
      return {en.get(), ols.get()};
    }));
  }
  for (auto& job : jobs) {
    for (auto& m : job.get()) rep.members.push_back(std::move(m));
  }
  rep.timing_seconds["members"] = seconds_since(t0);
  finish_report(rep, cfg.effective_ensemble_rule());
}

}  // namespace

std::string_view to_string(Track track) {
  switch (track) {
    case Track::a: return "a";
    case Track::b: return "b";
    case Track::c: return "c";
  }
  return "?";
}

Track parse_track(std::string_view text) {
  if (text == "a" || text == "A") return Track::a;
  if (text == "b" || text == "B") return Track::b;
  if (text == "c" || text == "C") return Track::c;
  throw ConfigError("unknown track '" + std::string(text) + "'");
}

std::string SourceSpec::label() const {
  switch (kind) {
    case SourceKind::tfidf: return "tfidf";
    case SourceKind::ppmi: return "ppmi";
    case SourceKind::external: return "external:" + name;
  }
  return "?";
}

SourceSpec SourceSpec::parse(std::string_view text) {
  const std::string_view t = trim(text);
  SourceSpec s;
  if (t == "tfidf") {
    s.kind = SourceKind::tfidf;
    s.name = "tfidf";
    return s;
  }
  if (t == "ppmi") {
    s.kind = SourceKind::ppmi;
    s.name = "ppmi";
    return s;
  }
  if (t.starts_with("external:")) {
    const std::string_view rest = t.substr(9);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 >= rest.size()) {
      throw ConfigError("external source must read external:<name>:<path>[,<path>...]");
    }
    s.kind = SourceKind::external;
    s.name = std::string(rest.substr(0, colon));
    for (auto& p : split(rest.substr(colon + 1), ',')) {
      if (!p.empty()) s.paths.emplace_back(p);
    }
    return s;
  }
  throw ConfigError("unknown embedding source '" + std::string(t) + "'");
}

FeatureMode RunConfig::effective_feature_mode() const {
  if (feature_mode) return *feature_mode;
  return track == Track::b ? FeatureMode::cosine_only : FeatureMode::rich;
}

EnsembleRule RunConfig::effective_ensemble_rule() const {
  if (ensemble_rule) return *ensemble_rule;
  return track == Track::a ? EnsembleRule::dev_weighted : EnsembleRule::uniform;
}

void RunConfig::validate() const {
  if (language.empty()) throw ConfigError("config: 'language' is required");
  if (sources.empty()) throw ConfigError("config: at least one 'source' is required");
  if (!dev) throw ConfigError("config: 'dev' is required");
  if (!test) throw ConfigError("config: 'test' is required");
  if (!(regressor.alpha >= 0.0)) throw ConfigError("config: elasticnet.alpha must be >= 0");
  if (!(regressor.l1_ratio >= 0.0 && regressor.l1_ratio <= 1.0)) {
    throw ConfigError("config: elasticnet.l1_ratio must lie in [0,1]");
  }
  for (double a : regressor.alpha_grid) {
    if (!(a >= 0.0)) throw ConfigError("config: alpha_grid entries must be >= 0");
  }
  switch (track) {
    case Track::a:
      if (!train) throw ConfigError("config: track a requires 'train'");
      if (!merge.empty()) throw ConfigError("config: 'merge' is only valid for track c");
      break;
    case Track::b:
      if (train) throw ConfigError("config: track b is unsupervised and takes no 'train'");
      if (!merge.empty()) throw ConfigError("config: 'merge' is only valid for track c");
      if (ensemble_rule == EnsembleRule::dev_weighted) {
        throw ConfigError("config: track b cannot weight members by dev gold scores");
      }
      break;
    case Track::c:
      if (train) throw ConfigError("config: track c builds its train set from 'merge' entries");
      if (merge.empty()) throw ConfigError("config: track c requires at least one 'merge' source");
      for (const auto& m : merge) {
        if (m.language == language) {
          throw ConfigError("config: merge source '" + m.language + "' equals the target language");
        }
      }
      break;
  }
}

RunConfig RunConfig::parse(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  bool separators_set = false;
  auto resolve = [&](std::string_view p) {
    std::filesystem::path path{std::string(p)};
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    return path;
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));

    if (key == "track") cfg.track = parse_track(value);
    else if (key == "language") cfg.language = value;
    else if (key == "train") cfg.train = resolve(value);
    else if (key == "dev") cfg.dev = resolve(value);
    else if (key == "test") cfg.test = resolve(value);
    else if (key == "source") {
      SourceSpec s = SourceSpec::parse(value);
      for (auto& p : s.paths) p = resolve(p.string());
      cfg.sources.push_back(std::move(s));
    } else if (key == "merge") {
      const auto colon = value.find(':');
      if (colon == std::string::npos || colon == 0) {
        throw ConfigError("config line " + std::to_string(lineno) + ": merge expects <lang>:<path>");
      }
      cfg.merge.push_back({value.substr(0, colon), resolve(value.substr(colon + 1))});
    } else if (key == "feature_mode") cfg.feature_mode = parse_feature_mode(value);
    else if (key == "ensemble") cfg.ensemble_rule = parse_ensemble_rule(value);
    else if (key == "elasticnet.alpha") cfg.regressor.alpha = to_double(key, value);
    else if (key == "elasticnet.l1_ratio") cfg.regressor.l1_ratio = to_double(key, value);
    else if (key == "elasticnet.tol") cfg.regressor.tol = to_double(key, value);
    else if (key == "elasticnet.max_iter") cfg.regressor.max_iter = to_count(key, value);
    else if (key == "elasticnet.alpha_grid") {
      cfg.regressor.alpha_grid.clear();
      for (const auto& a : split(value, ',')) {
        if (!a.empty()) cfg.regressor.alpha_grid.push_back(to_double(key, a));
      }
    } else if (key == "output_dir") cfg.output_dir = resolve(value);
    else if (key == "seed") cfg.seed = to_count(key, value);
    else if (key == "min_df") cfg.min_df = to_count(key, value);
    else if (key == "ppmi.window") cfg.ppmi_window = to_count(key, value);
    else if (key == "separator") {
      if (!separators_set) cfg.separators.clear();
      separators_set = true;
      cfg.separators.push_back(parse_separator(value));
    } else {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.parent_path());
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["track"] = std::string(to_string(track));
  j["language"] = language;
  auto opt_path = [](const std::optional<std::filesystem::path>& p) -> nlohmann::ordered_json {
    if (!p) return nullptr;
    return p->generic_string();
  };
  j["train"] = opt_path(train);
  j["dev"] = opt_path(dev);
  j["test"] = opt_path(test);
  j["merge"] = nlohmann::ordered_json::array();
  for (const auto& m : merge) {
    j["merge"].push_back({{"language", m.language}, {"path", m.path.generic_string()}});
  }
  j["sources"] = nlohmann::ordered_json::array();
  for (const auto& s : sources) {
    nlohmann::ordered_json e{{"label", s.label()}};
    if (!s.paths.empty()) {
      e["paths"] = nlohmann::ordered_json::array();
      for (const auto& p : s.paths) e["paths"].push_back(p.generic_string());
    }
    j["sources"].push_back(std::move(e));
  }
  j["feature_mode"] = std::string(to_string(effective_feature_mode()));
  j["elasticnet"] = {{"alpha", regressor.alpha},
                     {"l1_ratio", regressor.l1_ratio},
                     {"tol", regressor.tol},
                     {"max_iter", regressor.max_iter},
                     {"alpha_grid", regressor.alpha_grid}};
  j["ensemble_rule"] = std::string(to_string(effective_ensemble_rule()));
  j["output_dir"] = output_dir.generic_string();
  j["seed"] = seed;
  j["min_df"] = min_df;
  j["ppmi_window"] = ppmi_window;
  std::vector<std::string> seps;
  for (const auto& s : separators) seps.push_back(separator_name(s));
  j["separators"] = seps;
  return j;
}

nlohmann::ordered_json RunReport::to_json() const {
  auto corr = [](const std::optional<CorrelationReport>& r) -> nlohmann::ordered_json {
    if (!r) return nullptr;
    return {{"n", r->n}, {"spearman", score_json(r)}, {"tie_groups_pred", r->tie_groups_x},
            {"tie_groups_gold", r->tie_groups_y}};
  };
  nlohmann::ordered_json j;
  j["track"] = std::string(to_string(config.track));
  j["language"] = config.language;
  j["config"] = config.to_json();
  j["sizes"] = {{"train", train_size}, {"dev", dev.size()}, {"test", test.size()}};
  if (!train_composition.empty()) j["train_composition"] = train_composition;

  j["members"] = nlohmann::ordered_json::array();
  for (const auto& m : members) {
    nlohmann::ordered_json e;
    e["name"] = m.name;
    e["source"] = m.source;
    e["regressor"] = m.regressor;
    e["status"] = m.ok ? "ok" : "failed";
    if (!m.ok) e["error"] = m.error;
    if (m.alpha) e["alpha"] = *m.alpha;
    e["dev_spearman"] = score_json(m.dev);
    e["test_spearman"] = score_json(m.test);
    e["weight"] = m.weight;
    j["members"].push_back(std::move(e));
  }

  nlohmann::ordered_json ens;
  ens["rule"] = std::string(to_string(ensemble.rule));
  ens["members"] = ensemble.member_names;
  ens["dev_scores"] = nlohmann::ordered_json::array();
  for (const auto& s : ensemble.dev_scores) {
    ens["dev_scores"].push_back(s ? nlohmann::ordered_json(*s) : nlohmann::ordered_json(nullptr));
  }
  ens["weights"] = ensemble.weights;
  ens["dev"] = corr(ensemble_dev);
  ens["test"] = corr(ensemble_test);
  ens["dev_spearman"] = score_json(ensemble_dev);
  ens["test_spearman"] = score_json(ensemble_test);
  j["ensemble"] = std::move(ens);
  return j;
}

RunReport run_track_a(const RunConfig& cfg) {
  if (cfg.track != Track::a) throw ConfigError("run_track_a called with a non-A config");
  cfg.validate();
  const auto t0 = Clock::now();
  RunReport rep;
  rep.config = cfg;
  const PairDataset train = load_split(cfg, *cfg.train, Split::train, true);
  rep.dev = load_split(cfg, *cfg.dev, Split::dev, false);
  rep.test = load_split(cfg, *cfg.test, Split::test, false);
  rep.train_size = train.size();
  run_supervised(rep, train);
  rep.timing_seconds["total"] = seconds_since(t0);
  return rep;
}

RunReport run_track_b(const RunConfig& cfg) {
  if (cfg.track != Track::b) throw ConfigError("run_track_b called with a non-B config");
  cfg.validate();
  const auto t0 = Clock::now();
  RunReport rep;
  rep.config = cfg;
  rep.dev = load_split(cfg, *cfg.dev, Split::dev, false);
  rep.test = load_split(cfg, *cfg.test, Split::test, false);

  // Members see only text; gold stays with the report for evaluation.
  const PairDataset dev_text = strip_gold(rep.dev);
  const PairDataset test_text = strip_gold(rep.test);
  const std::vector<const PairDataset*> fit_text{&dev_text, &test_text};

  std::vector<std::future<MemberResult>> jobs;
  for (const auto& src : cfg.sources) {
    jobs.push_back(std::async(std::launch::async, [&, src]() {
      const std::string label = src.label();
      try {
        const SourceEmbeddings emb = embed_source(cfg, src, fit_text, nullptr, dev_text, test_text);
        auto unit_cos = [](const PairFeatures& f) {
          std::vector<double> out(f.rows());
          for (std::size_t i = 0; i < f.rows(); ++i) {
            out[i] = 0.5 * (f.matrix(static_cast<Eigen::Index>(i),
                                     static_cast<Eigen::Index>(f.cosine_col)) + 1.0);
          }
          return clip_unit(out);
        };
        MemberResult m;
        m.source = label;
        m.regressor = "cosine";
        m.name = label + "+cosine";
        m.dev_preds = unit_cos(build_pair_features(dev_text, *emb.dev, FeatureMode::cosine_only));
        m.test_preds = unit_cos(build_pair_features(test_text, *emb.test, FeatureMode::cosine_only));
        m.ok = true;
        return m;
      } catch (const std::exception& e) {
        return failed_member(label, "cosine", e.what());
      }
    }));
  }
  for (auto& job : jobs) rep.members.push_back(job.get());
  finish_report(rep, cfg.effective_ensemble_rule());
  rep.timing_seconds["total"] = seconds_since(t0);
  return rep;
}

RunReport run_track_c(const RunConfig& cfg) {
  if (cfg.track != Track::c) throw ConfigError("run_track_c called with a non-C config");
  cfg.validate();
  const auto t0 = Clock::now();
  RunReport rep;
  rep.config = cfg;

  std::vector<PairDataset> sources;
  for (const auto& m : cfg.merge) {
    sources.push_back(load_dataset(m.path, true, load_options(cfg, m.language, Split::train)));
  }
  const PairDataset train = merge_train_sets(sources, cfg.language);
  for (const auto& p : train.pairs) {
    const std::string lang = p.pair_id.substr(0, p.pair_id.find(':'));
    if (lang == cfg.language) {
      throw IntegrityError("merged train set contains target-language pair '" + p.pair_id + "'");
    }
    ++rep.train_composition[lang];
  }
  rep.train_size = train.size();
  rep.dev = load_split(cfg, *cfg.dev, Split::dev, false);
  rep.test = load_split(cfg, *cfg.test, Split::test, false);
  run_supervised(rep, train);
  rep.timing_seconds["total"] = seconds_since(t0);
  return rep;
}

RunReport run_track(const RunConfig& cfg) {
  switch (cfg.track) {
    case Track::a: return run_track_a(cfg);
    case Track::b: return run_track_b(cfg);
    case Track::c: return run_track_c(cfg);
  }
  throw ConfigError("unknown track");
}

void write_run_outputs(const RunReport& report, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "predictions");
  fs::create_directories(dir / "scatter");

  auto write_json = [](const fs::path& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << j.dump(2) << '\n';
  };
  write_json(dir / "report.json", report.to_json());
  write_json(dir / "timing.json", report.timing_seconds);

  for (const auto& m : report.members) {
    if (!m.ok) continue;
    const std::string stem = file_safe(m.name);
    write_predictions(report.dev, m.dev_preds, dir / "predictions" / ("dev_" + stem + ".csv"));
    write_predictions(report.test, m.test_preds, dir / "predictions" / ("test_" + stem + ".csv"));
  }
  write_predictions(report.dev, report.dev_preds, dir / "predictions" / "dev_ensemble.csv");
  write_predictions(report.test, report.test_preds, dir / "predictions" / "test_ensemble.csv");

  const std::string title = report.config.language + " track " +
                            std::string(to_string(report.config.track));
  if (report.dev.has_gold()) {
    emit_scatter(*report.dev.gold, report.dev_preds, dir / "scatter" / "dev_ensemble", title + " dev");
  }
  if (report.test.has_gold()) {
    emit_scatter(*report.test.gold, report.test_preds, dir / "scatter" / "test_ensemble",
                 title + " test");
  }
}

}  // namespace strel
