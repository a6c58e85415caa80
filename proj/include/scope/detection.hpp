#pragma once

#include <span>
#include <vector>

#include "scope/estimator_config.hpp"
#include "scope/linalg.hpp"
#include "scope/synthetic.hpp"

namespace scope {

/// Mahalanobis distance (x - mu)^T P (x - mu) of every row.
std::vector<double> rx_scores(const SampleMatrix& pixels, const Vector& mu,
                              const SymMatrix& precision);

/// Global RX: background mean and covariance from all pixels, the covariance
/// supplied by `cov_fn` and inverted.
std::vector<double> rx_global(const SampleMatrix& pixels, const CovarianceFn& cov_fn);

/// Area under the ROC curve: P(score of a 1 > score of a 0) + P(tie) / 2,
/// computed from average ranks. Labels must be 0 or 1 with both present.
double auc(std::span<const double> scores, std::span<const int> labels);

}  // namespace scope
