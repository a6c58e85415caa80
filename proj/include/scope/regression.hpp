#pragma once

#include <span>

namespace scope {

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// In [0, 1]; 1 for an exact fit (including constant data).
  double r_squared = 0.0;
};

/// Ordinary least squares of y on x. Throws InvalidInput when x has no spread
/// or the spans differ in length.
RegressionFit ols_fit(std::span<const double> x, std::span<const double> y);

struct RadiusPoint {
  double n = 0.0;
  double rho = 0.0;
};

/// OLS of log(rho) on log(n); needs at least 3 points, all positive.
RegressionFit loglog_regress(std::span<const RadiusPoint> points);

}  // namespace scope
