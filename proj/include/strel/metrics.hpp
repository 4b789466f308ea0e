#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace strel {

// Ranks 1..n; tied values share the mean of the positions they occupy.
std::vector<double> average_ranks(std::span<const double> x);

struct CorrelationReport {
  std::size_t n = 0;
  // Empty when either side is constant.
  std::optional<double> spearman;
  // Number of groups of two or more tied values on each side.
  std::size_t tie_groups_x = 0;
  std::size_t tie_groups_y = 0;

  bool defined() const { return spearman.has_value(); }
};

// Pearson correlation of the average ranks. Requires n >= 2 and equal lengths.
CorrelationReport spearman(std::span<const double> x, std::span<const double> y);

}  // namespace strel
