#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace strel {

enum class EnsembleRule { dev_weighted, uniform };

std::string_view to_string(EnsembleRule rule);
EnsembleRule parse_ensemble_rule(std::string_view text);

struct EnsembleSpec {
  std::vector<std::string> member_names;
  std::vector<std::optional<double>> dev_scores;
  std::vector<double> weights;  // nonnegative, sum to 1
  EnsembleRule rule = EnsembleRule::uniform;
};

// w_i = max(dev_i, 0) / sum_j max(dev_j, 0), undefined scores counting as 0.
// Falls back to uniform weights (and rule) when every clamped score is 0.
EnsembleSpec dev_weighted_spec(std::vector<std::string> members,
                               std::vector<std::optional<double>> dev_scores);

EnsembleSpec uniform_spec(std::vector<std::string> members,
                          std::vector<std::optional<double>> dev_scores = {});

// Weighted element-wise sum of the member predictions, clipped to [0,1].
std::vector<double> combine(const EnsembleSpec& spec,
                            std::span<const std::vector<double>> predictions);

}  // namespace strel
