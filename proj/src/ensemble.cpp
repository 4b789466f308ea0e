#include "strel/ensemble.hpp"

#include <algorithm>

#include "strel/errors.hpp"
#include "strel/regress.hpp"

namespace strel {

std::string_view to_string(EnsembleRule rule) {
  return rule == EnsembleRule::dev_weighted ? "dev_weighted" : "uniform";
}

EnsembleRule parse_ensemble_rule(std::string_view text) {
  if (text == "dev_weighted" || text == "weighted") return EnsembleRule::dev_weighted;
  if (text == "uniform" || text == "average") return EnsembleRule::uniform;
  throw ConfigError("unknown ensemble rule '" + std::string(text) + "'");
}

EnsembleSpec uniform_spec(std::vector<std::string> members,
                          std::vector<std::optional<double>> dev_scores) {
  if (members.empty()) throw ConfigError("ensemble needs at least one member");
  if (dev_scores.empty()) dev_scores.resize(members.size());
  if (dev_scores.size() != members.size()) {
    throw AlignmentError("ensemble member and dev score counts differ");
  }
  EnsembleSpec spec;
  spec.weights.assign(members.size(), 1.0 / static_cast<double>(members.size()));
  spec.member_names = std::move(members);
  spec.dev_scores = std::move(dev_scores);
  spec.rule = EnsembleRule::uniform;
  return spec;
}

EnsembleSpec dev_weighted_spec(std::vector<std::string> members,
                               std::vector<std::optional<double>> dev_scores) {
  if (members.empty()) throw ConfigError("ensemble needs at least one member");
  if (dev_scores.size() != members.size()) {
    throw AlignmentError("ensemble member and dev score counts differ");
  }
  std::vector<double> clamped(members.size());
  double total = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    clamped[i] = std::max(dev_scores[i].value_or(0.0), 0.0);
    total += clamped[i];
  }
  if (total <= 0.0) return uniform_spec(std::move(members), std::move(dev_scores));

  EnsembleSpec spec;
  spec.weights.resize(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) spec.weights[i] = clamped[i] / total;
  spec.member_names = std::move(members);
  spec.dev_scores = std::move(dev_scores);
  spec.rule = EnsembleRule::dev_weighted;
  return spec;
}

std::vector<double> combine(const EnsembleSpec& spec,
                            std::span<const std::vector<double>> predictions) {
  if (predictions.size() != spec.weights.size()) {
    throw AlignmentError("ensemble has " + std::to_string(spec.weights.size()) +
                         " weights but received " + std::to_string(predictions.size()) +
                         " prediction vectors");
  }
  if (predictions.empty()) return {};
  const std::size_t n = predictions.front().size();
  for (const auto& p : predictions) {
    if (p.size() != n) throw AlignmentError("ensemble member predictions differ in length");
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t m = 0; m < predictions.size(); ++m) {
    const double w = spec.weights[m];
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) out[i] += w * predictions[m][i];
  }
  return clip_unit(out);
}

}  // namespace strel
