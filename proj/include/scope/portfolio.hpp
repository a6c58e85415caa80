#pragma once

#include <string>
#include <vector>

#include "scope/estimator_config.hpp"
#include "scope/linalg.hpp"

namespace scope {

struct PortfolioTolerances {
  double move = 1e-10;
  int max_iterations = 100000;
  /// KKT certificate, relative to max(1, |mu|).
  double kkt = 1e-6;
};

/// argmin w^T S w over the probability simplex.
///
/// Projected gradient descent (step 1 / (2 lambda_max), sort-based simplex
/// projection), followed by an active-set polish that solves the equality
/// constrained problem on the current support. The returned point always
/// satisfies the KKT certificate below; otherwise NonConvergence is thrown.
/// The zero matrix yields uniform weights.
Vector min_variance_portfolio(const SymMatrix& sigma, const PortfolioTolerances& tol = {});

/// Euclidean projection onto {w >= 0, sum w = 1}.
Vector project_simplex(const Vector& v);

/// Largest violation of the simplex KKT conditions at w, with
/// mu = w^T (2 S w): |g_i - mu| on the support, max(0, mu - g_i) off it.
double portfolio_kkt_gap(const SymMatrix& sigma, const Vector& w);

/// Monthly metrics with zero risk-free rate.
struct PerformanceMetrics {
  /// 12 * mean * 100 (annualized, percent).
  double average_return = 0.0;
  /// mean / std (n - 1 denominator); +inf with the flag set when std = 0.
  double sharpe = 0.0;
  bool sharpe_undefined = false;
  /// mean / sqrt(mean(min(r, 0)^2)); +inf with the flag set without losses.
  double sortino = 0.0;
  bool sortino_undefined = false;
  /// prod(1 + r) - 1 as a fraction, and the same in percent.
  double cumulative_return = 0.0;
  double cumulative_return_pct = 0.0;
};

/// Needs at least two returns.
PerformanceMetrics performance_metrics(const std::vector<double>& monthly_returns);

struct BacktestReport {
  std::string estimator;
  Index window = 0;
  std::vector<double> monthly_returns;
  std::vector<Vector> weights_history;
  PerformanceMetrics metrics;
};

/// Rolling min-variance backtest: for every t >= window the covariance is
/// estimated from rows [t - window, t), the portfolio is rebalanced and
/// w^T r_t recorded. Needs at least two out-of-sample periods. With a single
/// asset no estimate is formed and the weight is 1.
BacktestReport rolling_backtest(const Matrix& returns, Index window, const CovarianceFn& cov_fn,
                                const std::string& estimator_name = "custom");

}  // namespace scope
