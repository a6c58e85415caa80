#include "scope/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "scope/parallel.hpp"

namespace scope {

namespace {

void require_plug_in(DivergenceKind kind) {
  if (!supports_plug_in(kind)) {
    throw Unsupported(std::string(kind_label(kind)) +
                      " divergence has no asymptotic radius: its expected gradient "
                      "vanishes for every n (supported: kl, wasserstein, sstein)");
  }
}

}  // namespace

bool supports_plug_in(DivergenceKind kind) {
  return kind == DivergenceKind::KullbackLeibler || kind == DivergenceKind::Wasserstein ||
         kind == DivergenceKind::SymmetrizedStein;
}

double tau_star(const SymMatrix& sigma) {
  const double sq = sigma.matrix().squaredNorm();
  if (sq == 0.0) throw ZeroMatrix("tau_star: matrix is zero");
  return static_cast<double>(sigma.dim()) / sq;
}

double rho_star_from_spectrum(DivergenceKind kind, const Vector& eigenvalues) {
  require_plug_in(kind);
  const Index n = eigenvalues.size();
  if (n < 1) throw InvalidInput("rho_star: empty spectrum");
  const double hi = eigenvalues.maxCoeff();
  const double lo = eigenvalues.minCoeff();
  if (!(lo > 0.0) || lo <= kSingularityThreshold * hi) {
    throw SingularMatrix("rho_star: matrix must be positive definite, smallest eigenvalue " +
                         std::to_string(lo));
  }
  if (hi - lo <= 1e-12 * hi) {
    throw ScalarMatrix("rho_star: matrix is a multiple of the identity, the radius "
                       "constant is undefined");
  }

  const double p = static_cast<double>(n);
  const double frob_sq = eigenvalues.squaredNorm();
  const double tau = p / frob_sq;
  const Eigen::ArrayXd l = eigenvalues.array();
  const Eigen::ArrayXd gap_sq = (1.0 - tau * l.square()).square();

  switch (kind) {
    case DivergenceKind::KullbackLeibler:
    case DivergenceKind::SymmetrizedStein: {
      const double inv_sq = l.inverse().square().sum();
      const double g = inv_sq - p * p / frob_sq;
      const double c = kind == DivergenceKind::KullbackLeibler ? 16.0 : 32.0;
      return (p + 1.0) * (p + 1.0) * inv_sq * inv_sq / (c * g * g) * gap_sq.sum();
    }
    case DivergenceKind::Wasserstein: {
      const double h = l.inverse().sum() - p * l.sum() / frob_sq;
      return (p + 1.0) * (p + 1.0) * p * p / (256.0 * h * h) * (gap_sq / l).sum();
    }
    default:
      break;
  }
  return 0.0;  // unreachable, require_plug_in rejected the rest
}

double rho_star_asymptotic(DivergenceKind kind, const SymMatrix& sigma0) {
  require_plug_in(kind);
  return rho_star_from_spectrum(kind, spectral_decompose(sigma0).eigenvalues);
}

TuningResult plug_in_radius(DivergenceKind kind, const SymMatrix& matrix, Index n) {
  require_plug_in(kind);
  if (n < 1) throw InvalidInput("plug_in_radius: n must be >= 1");

  const Vector ev = spectral_decompose(matrix).eigenvalues;
  const double top = ev(ev.size() - 1);
  std::vector<double> positive;
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > kSingularityThreshold * top) positive.push_back(ev(i));
  }
  if (positive.size() < 2) {
    throw SingularMatrix("plug_in_radius: need at least two positive eigenvalues, found " +
                         std::to_string(positive.size()));
  }

  TuningResult out;
  out.kind = kind;
  out.n = n;
  out.tau_star = tau_star(matrix);
  out.target_scale = frobenius_norm(matrix) / std::sqrt(static_cast<double>(matrix.dim()));
  out.effective_rank = static_cast<Index>(positive.size());
  out.rho_star_constant = rho_star_from_spectrum(
      kind, Eigen::Map<const Vector>(positive.data(), static_cast<Index>(positive.size())));
  const double nd = static_cast<double>(n);
  out.rho_n = out.rho_star_constant / (nd * nd);
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
    throw InvalidInput("log_grid: need 0 < lo <= hi and count >= 1");
  }
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_radius_grid() { return log_grid(1e-5, 2e3, 60); }

GridSearchError::GridSearchError(double rho, const std::string& cause)
    : Error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "loss oracle failed at rho = " << rho << ": " << cause;
        return os.str();
      }()),
      rho_(rho) {}

GridSearchResult grid_search_radius(std::span<const double> grid,
                                    const std::function<double(double)>& loss_oracle,
                                    GridSearchOptions options) {
  if (grid.empty()) throw InvalidInput("grid_search_radius: empty grid");
  for (double r : grid) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw InvalidInput("grid_search_radius: grid points must be positive");
    }
  }

  GridSearchResult out;
  out.losses.assign(grid.size(), 0.0);
  parallel_for(grid.size(), options.threads, [&](std::size_t i) {
    try {
      out.losses[i] = loss_oracle(grid[i]);
    } catch (const std::exception& e) {
      throw GridSearchError(grid[i], e.what());
    }
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double li = out.losses[i];
    const double lb = out.losses[best];
    if (li < lb || (li == lb && grid[i] < grid[best])) best = i;
  }
  out.best_index = best;
  out.rho_best = grid[best];
  return out;
}

}  // namespace scope
