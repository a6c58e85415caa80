#include "scope/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "scope/error.hpp"

namespace scope {

std::vector<double> rx_scores(const SampleMatrix& pixels, const Vector& mu,
                              const SymMatrix& precision) {
  if (mu.size() != pixels.p() || precision.dim() != pixels.p()) {
    throw InvalidInput("rx_scores: dimension mismatch (pixels p = " +
                       std::to_string(pixels.p()) + ", mu " + std::to_string(mu.size()) +
                       ", precision " + std::to_string(precision.dim()) + ")");
  }
  const Matrix centered = pixels.rows().rowwise() - mu.transpose();
  const Matrix weighted = centered * precision.matrix();
  std::vector<double> out(static_cast<std::size_t>(pixels.n()));
  for (Index i = 0; i < pixels.n(); ++i) {
    // A PSD form can only come out negative through rounding.
    out[static_cast<std::size_t>(i)] = std::max(0.0, weighted.row(i).dot(centered.row(i)));
  }
  return out;
}

std::vector<double> rx_global(const SampleMatrix& pixels, const CovarianceFn& cov_fn) {
  const SymMatrix cov = cov_fn(pixels);
  return rx_scores(pixels, pixels.mean(), invert_spd(cov));
}

double auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw InvalidInput("auc: scores and labels differ in length");
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw InvalidInput("auc: labels must be 0 or 1");
    if (!std::isfinite(scores[i])) throw InvalidInput("auc: non-finite score");
    n_pos += static_cast<std::size_t>(labels[i]);
  }
  const std::size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw InvalidInput("auc: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Ranks are doubled so tied groups get an integer (first + last) average;
  // the sum stays exact for any realistic sample size.
  long long rank_sum2 = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    const auto avg2 = static_cast<long long>(i + 1 + j + 1);
    for (std::size_t k = i; k <= j; ++k) {
      if (labels[order[k]] == 1) rank_sum2 += avg2;
    }
    i = j + 1;
  }
  const auto np = static_cast<long long>(n_pos);
  const long long u2 = rank_sum2 - np * (np + 1);
  return static_cast<double>(u2) / (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

}  // namespace scope
