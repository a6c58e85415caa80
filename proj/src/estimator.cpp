#include "scope/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace scope {

namespace {

// Clips eigenvalues within the singularity threshold of zero; rejects
// clearly negative ones.
Vector cleaned_spectrum(const Vector& eigenvalues, DivergenceKind kind) {
  const double top = eigenvalues(eigenvalues.size() - 1);
  const double floor = -kSingularityThreshold * std::max(top, 0.0);
  Vector out = eigenvalues;
  for (Index i = 0; i < out.size(); ++i) {
    if (out(i) < floor) {
      std::ostringstream os;
      os.precision(17);
      os << kind_label(kind) << " divergence: nominal matrix has negative eigenvalue "
         << out(i) << ", outside domain " << domain_description(kind);
      throw DomainError(kind, out(i), top, os.str());
    }
    out(i) = std::max(out(i), 0.0);
  }
  return out;
}

}  // namespace

ScopeEstimate scope_estimate(const SymMatrix& nominal, DivergenceKind kind, double tau,
                             double rho) {
  return scope_estimate(spectral_decompose(nominal), kind, tau, rho);
}

ScopeEstimate scope_estimate(const SpectralDecomposition& nominal, DivergenceKind kind,
                             double tau, double rho) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InvalidInput("scope_estimate: tau must be positive, got " + std::to_string(tau));
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw InvalidInput("scope_estimate: rho must be positive, got " + std::to_string(rho));
  }
  const Vector lambda = cleaned_spectrum(nominal.eigenvalues, kind);
  const double top = lambda(lambda.size() - 1);
  if (requires_definite_nominal(kind) && !(lambda(0) > kSingularityThreshold * top)) {
    std::ostringstream os;
    os.precision(17);
    os << kind_label(kind) << " divergence requires a positive definite nominal matrix "
       << "(domain " << domain_description(kind) << "); smallest eigenvalue is "
       << lambda(0);
    throw DomainError(kind, lambda(0), top, os.str());
  }

  const ShrinkageProblem problem{kind, tau, rho, lambda};
  const DualSolution dual = solve_dual(problem);

  ScopeEstimate out{
      .sigma_star = reconstruct(nominal.basis, dual.shrunk_spectrum),
      .x_star = reconstruct(nominal.basis, dual.shrunk_spectrum.cwiseInverse())};
  out.kind = kind;
  out.tau = tau;
  out.rho_used = rho;
  out.rho_max = dual.rho_max;
  out.gamma_star = dual.gamma_star;
  out.target_scale = target_scale(tau);
  out.binding = dual.binding;
  out.scalar_nominal = dual.scalar_nominal;
  out.nominal_spectrum = lambda;
  out.shrunk_spectrum = dual.shrunk_spectrum;
  out.condition_before = lambda(0) > kInvertibilityThreshold * top
                             ? top / lambda(0)
                             : std::numeric_limits<double>::infinity();
  out.condition_after = dual.shrunk_spectrum.maxCoeff() / dual.shrunk_spectrum.minCoeff();
  out.dual_residual = dual.dual_residual;
  out.phi_residual = dual.phi_residual;
  return out;
}

double stein_loss(const SymMatrix& x, const SymMatrix& s) {
  if (x.dim() != s.dim()) throw InvalidInput("stein_loss: dimension mismatch");
  return -log_det_spd(x) + frobenius_inner(x, s);
}

double frobenius_loss(const SymMatrix& sigma, const SymMatrix& s) {
  if (sigma.dim() != s.dim()) throw InvalidInput("frobenius_loss: dimension mismatch");
  return sigma.matrix().squaredNorm() - 2.0 * frobenius_inner(sigma, s);
}

double combined_loss(const SymMatrix& estimate, const SymMatrix& sigma0, double tau_star) {
  if (estimate.dim() != sigma0.dim()) throw InvalidInput("combined_loss: dimension mismatch");
  const SpectralDecomposition sd = spectral_decompose(estimate);
  const double hi = sd.eigenvalues(sd.eigenvalues.size() - 1);
  if (hi <= 0.0 || sd.eigenvalues(0) <= kInvertibilityThreshold * hi) {
    throw SingularMatrix("combined_loss: estimate is not positive definite");
  }
  const SymMatrix precision = reconstruct(sd.basis, sd.eigenvalues.cwiseInverse());
  // -log det(E^-1) = log det E
  const double stein = sd.eigenvalues.array().log().sum() + frobenius_inner(precision, sigma0);
  return stein + 0.5 * tau_star * frobenius_loss(estimate, sigma0);
}

double relative_eig_error(const SymMatrix& estimate, const SymMatrix& truth) {
  if (estimate.dim() != truth.dim()) {
    throw InvalidInput("relative_eig_error: dimension mismatch");
  }
  const Vector est = spectral_decompose(estimate).eigenvalues;
  const Vector tru = spectral_decompose(truth).eigenvalues;
  const double hi = tru(tru.size() - 1);
  if (hi <= 0.0 || tru(0) <= kInvertibilityThreshold * hi) {
    throw SingularMatrix("relative_eig_error: reference matrix is not positive definite");
  }
  // Both ascending; matching indices is the same as matching descending orders.
  return ((est - tru).cwiseAbs().array() / tru.array()).mean();
}

double kkt_residual(const ScopeEstimate& estimate, const SymMatrix& nominal) {
  if (estimate.sigma_star.dim() != nominal.dim()) {
    throw InvalidInput("kkt_residual: dimension mismatch");
  }
  Matrix residual = estimate.x_star.matrix() - estimate.tau * estimate.sigma_star.matrix();
  if (estimate.gamma_star != 0.0) {
    const SpectralDecomposition sd = spectral_decompose(nominal);
    const Vector lambda = cleaned_spectrum(sd.eigenvalues, estimate.kind);
    Vector grad(lambda.size());
    for (Index i = 0; i < lambda.size(); ++i) {
      const double rayleigh =
          sd.basis.col(i).dot(estimate.sigma_star.matrix() * sd.basis.col(i));
      grad(i) = generator_deriv(estimate.kind, rayleigh, lambda(i));
    }
    residual -= estimate.gamma_star * (sd.basis * grad.asDiagonal() * sd.basis.transpose());
  }
  return residual.norm();
}

LinearShrinkage lw_linear(const SampleMatrix& x) {
  const Index n = x.n();
  const Index p = x.p();
  if (n < 2) throw InvalidInput("lw_linear: need n >= 2 samples");

  const Matrix centered = x.rows().rowwise() - x.rows().colwise().mean();
  const Matrix s = centered.transpose() * centered / static_cast<double>(n);
  const double pd = static_cast<double>(p);
  const double nu = s.trace() / pd;

  const Matrix to_target = s - nu * Matrix::Identity(p, p);
  const double delta_sq = to_target.squaredNorm() / pd;

  double beta_sum = 0.0;
  for (Index k = 0; k < n; ++k) {
    const Vector xk = centered.row(k).transpose();
    beta_sum += (xk * xk.transpose() - s).squaredNorm();
  }
  const double beta_sq =
      std::min(delta_sq, beta_sum / (static_cast<double>(n) * static_cast<double>(n) * pd));

  const double t = delta_sq > 0.0 ? beta_sq / delta_sq : 0.0;
  const Matrix est = t * nu * Matrix::Identity(p, p) + (1.0 - t) * s;
  return {SymMatrix(0.5 * (est + est.transpose())), t, nu};
}

}  // namespace scope
