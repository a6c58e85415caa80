#include "scope/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <Eigen/QR>

#include "scope/error.hpp"

namespace scope {

Vector project_simplex(const Vector& v) {
  const Index p = v.size();
  if (p < 1) throw InvalidInput("project_simplex: empty vector");
  Vector u = v;
  std::sort(u.data(), u.data() + p, std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Index k = 0; k < p; ++k) {
    cumsum += u(k);
    const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (u(k) - t > 0.0) theta = t;
  }
  return (v.array() - theta).cwiseMax(0.0).matrix();
}

double portfolio_kkt_gap(const SymMatrix& sigma, const Vector& w) {
  const Vector g = 2.0 * (sigma.matrix() * w);
  const double mu = w.dot(g);
  double gap = 0.0;
  for (Index i = 0; i < w.size(); ++i) {
    gap = std::max(gap, w(i) > 0.0 ? std::abs(g(i) - mu) : std::max(0.0, mu - g(i)));
  }
  return gap;
}

namespace {

double objective(const SymMatrix& sigma, const Vector& w) { return w.dot(sigma.matrix() * w); }

bool certified(const SymMatrix& sigma, const Vector& w, double tol) {
  const double mu = w.dot(2.0 * (sigma.matrix() * w));
  return portfolio_kkt_gap(sigma, w) <= tol * std::max(1.0, std::abs(mu));
}

// Minimizer of w^T S w subject to sum w = 1 on the given support, through the
// (possibly singular) KKT system [2 S_SS, 1; 1^T, 0].
Vector solve_on_support(const SymMatrix& sigma, const std::vector<Index>& support) {
  const auto k = static_cast<Index>(support.size());
  Matrix kkt = Matrix::Zero(k + 1, k + 1);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) kkt(i, j) = 2.0 * sigma(support[i], support[j]);
    kkt(i, k) = 1.0;
    kkt(k, i) = 1.0;
  }
  Vector rhs = Vector::Zero(k + 1);
  rhs(k) = 1.0;
  const Vector sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  Vector w = Vector::Zero(sigma.dim());
  for (Index i = 0; i < k; ++i) w(support[i]) = sol(i);
  return w;
}

// Primal active-set refinement starting from the support of w0.
std::optional<Vector> polish(const SymMatrix& sigma, const Vector& w0, double tol) {
  const Index p = sigma.dim();
  std::vector<Index> support;
  for (Index i = 0; i < p; ++i) {
    if (w0(i) > 0.0) support.push_back(i);
  }
  Vector w = w0;
  for (Index iter = 0; iter < 4 * p + 8 && !support.empty(); ++iter) {
    Vector cand = solve_on_support(sigma, support);
    Index worst = -1;
    for (Index i : support) {
      if (cand(i) <= 0.0 && (worst < 0 || cand(i) < cand(worst))) worst = i;
    }
    if (worst >= 0) {
      // Step from the feasible w towards cand until the first weight hits zero.
      double step = 1.0;
      Index blocking = worst;
      for (Index i : support) {
        if (cand(i) < w(i)) {
          const double s = w(i) / (w(i) - cand(i));
          if (s < step) {
            step = s;
            blocking = i;
          }
        }
      }
      w = (w + step * (cand - w)).cwiseMax(0.0);
      w(blocking) = 0.0;
      w /= w.sum();
      support.erase(std::find(support.begin(), support.end(), blocking));
      continue;
    }
    w = cand;
    const Vector g = 2.0 * (sigma.matrix() * w);
    const double mu = w.dot(g);
    Index enter = -1;
    for (Index i = 0; i < p; ++i) {
      if (w(i) == 0.0 && mu - g(i) > tol * std::max(1.0, std::abs(mu)) &&
          (enter < 0 || g(i) < g(enter))) {
        enter = i;
      }
    }
    if (enter < 0) return w;
    support.push_back(enter);
    std::sort(support.begin(), support.end());
  }
  return std::nullopt;
}

}  // namespace

Vector min_variance_portfolio(const SymMatrix& sigma, const PortfolioTolerances& tol) {
  const Index p = sigma.dim();
  if (p == 1) return Vector::Ones(1);
  const SpectralDecomposition sd = spectral_decompose(sigma);
  const double top = sd.eigenvalues(p - 1);
  if (sd.eigenvalues(0) < -1e-10 * std::max(1.0, std::abs(top))) {
    throw InvalidInput("min_variance_portfolio: covariance is not positive semidefinite");
  }
  const Vector uniform = Vector::Constant(p, 1.0 / static_cast<double>(p));
  if (!(top > 0.0)) return uniform;

  const double step = 1.0 / (2.0 * top);
  Vector w = uniform;
  for (int it = 0; it < tol.max_iterations; ++it) {
    const Vector next = project_simplex(w - step * 2.0 * (sigma.matrix() * w));
    const double move = (next - w).norm();
    w = next;
    if (move < tol.move) break;
  }

  if (const auto polished = polish(sigma, w, tol.kkt)) {
    if (certified(sigma, *polished, tol.kkt) &&
        objective(sigma, *polished) <= objective(sigma, w) + 1e-12 * std::max(1.0, top)) {
      return *polished;
    }
  }
  if (certified(sigma, w, tol.kkt)) return w;
  throw NonConvergence("min_variance_portfolio: KKT gap " +
                       std::to_string(portfolio_kkt_gap(sigma, w)) + " after " +
                       std::to_string(tol.max_iterations) + " iterations");
}

PerformanceMetrics performance_metrics(const std::vector<double>& r) {
  if (r.size() < 2) throw InvalidInput("performance_metrics: need at least two returns");
  const double n = static_cast<double>(r.size());
  double mean = 0.0;
  double growth = 1.0;
  double downside = 0.0;
  for (double v : r) {
    if (!std::isfinite(v)) throw InvalidInput("performance_metrics: non-finite return");
    mean += v;
    growth *= 1.0 + v;
    downside += std::min(v, 0.0) * std::min(v, 0.0);
  }
  mean /= n;
  downside /= n;
  double ss = 0.0;
  for (double v : r) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));

  constexpr double inf = std::numeric_limits<double>::infinity();
  PerformanceMetrics m;
  m.average_return = 12.0 * mean * 100.0;
  m.sharpe_undefined = !(sd > 0.0);
  m.sharpe = m.sharpe_undefined ? inf : mean / sd;
  m.sortino_undefined = !(downside > 0.0);
  m.sortino = m.sortino_undefined ? inf : mean / std::sqrt(downside);
  m.cumulative_return = growth - 1.0;
  m.cumulative_return_pct = 100.0 * m.cumulative_return;
  return m;
}

BacktestReport rolling_backtest(const Matrix& returns, Index window, const CovarianceFn& cov_fn,
                                const std::string& estimator_name) {
  const Index periods = returns.rows();
  const Index p = returns.cols();
  if (p < 1) throw InvalidInput("rolling_backtest: no assets");
  if (window < 2) throw InvalidInput("rolling_backtest: window must be at least 2");
  if (periods < window + 2) {
    throw InvalidInput("rolling_backtest: need at least two periods after the window (" +
                       std::to_string(periods) + " rows, window " + std::to_string(window) + ")");
  }
  if (!returns.allFinite()) throw InvalidInput("rolling_backtest: non-finite return");

  BacktestReport report;
  report.estimator = estimator_name;
  report.window = window;
  for (Index t = window; t < periods; ++t) {
    Vector w = Vector::Ones(1);
    if (p > 1) {
      const SampleMatrix hist(returns.middleRows(t - window, window));
      w = min_variance_portfolio(cov_fn(hist));
    }
    report.monthly_returns.push_back(returns.row(t).dot(w));
    report.weights_history.push_back(std::move(w));
  }
  report.metrics = performance_metrics(report.monthly_returns);
  return report;
}

}  // namespace scope
