#include "strel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "strel/errors.hpp"

namespace strel {
namespace {

struct Ranked {
  std::vector<double> ranks;
  std::size_t tie_groups = 0;
};

Ranked rank_with_ties(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) throw ValidationError("cannot rank a non-finite value");
  }
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  Ranked r;
  r.ranks.assign(n, 0.0);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && x[order[j]] == x[order[i]]) ++j;
    // positions i..j-1 (0-based) -> ranks i+1..j
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) r.ranks[order[k]] = avg;
    if (j - i > 1) ++r.tie_groups;
    i = j;
  }
  return r;
}

std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return std::nullopt;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> x) {
  return rank_with_ties(x).ranks;
}

CorrelationReport spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw AlignmentError("spearman inputs differ in length: " + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()));
  }
  if (x.size() < 2) throw ValidationError("spearman needs at least 2 samples");
  const Ranked rx = rank_with_ties(x);
  const Ranked ry = rank_with_ties(y);
  CorrelationReport rep;
  rep.n = x.size();
  rep.tie_groups_x = rx.tie_groups;
  rep.tie_groups_y = ry.tie_groups;
  rep.spearman = pearson(rx.ranks, ry.ranks);
  return rep;
}

}  // namespace strel
