#include "scope/regression.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "scope/error.hpp"

namespace scope {

RegressionFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidInput("ols_fit: x and y differ in length");
  if (x.size() < 2) throw InvalidInput("ols_fit: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 1e-300)) throw InvalidInput("ols_fit: x values have no spread");

  RegressionFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

RegressionFit loglog_regress(std::span<const RadiusPoint> points) {
  if (points.size() < 3) {
    throw InvalidInput("loglog_regress: need at least 3 points, got " +
                       std::to_string(points.size()));
  }
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(points.size());
  y.reserve(points.size());
  for (const RadiusPoint& pt : points) {
    if (!(pt.n > 0.0) || !(pt.rho > 0.0)) {
      throw InvalidInput("loglog_regress: points must be positive");
    }
    x.push_back(std::log(pt.n));
    y.push_back(std::log(pt.rho));
  }
  return ols_fit(x, y);
}

}  // namespace scope
