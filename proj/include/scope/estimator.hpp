#pragma once

#include "scope/divergence.hpp"
#include "scope/linalg.hpp"
#include "scope/shrinkage.hpp"
#include "scope/synthetic.hpp"

namespace scope {

/// The covariance-precision pair with its shrinkage diagnostics.
struct ScopeEstimate {
  SymMatrix sigma_star;
  SymMatrix x_star;
  DivergenceKind kind = DivergenceKind::KullbackLeibler;
  double tau = 0.0;
  double rho_used = 0.0;
  double rho_max = 0.0;
  double gamma_star = 0.0;
  double target_scale = 0.0;
  bool binding = false;
  bool scalar_nominal = false;
  Vector nominal_spectrum{};
  Vector shrunk_spectrum{};
  /// Infinite when the nominal is singular.
  double condition_before = 0.0;
  double condition_after = 0.0;
  double dual_residual = 0.0;
  double phi_residual = 0.0;
};

/// Sigma* = V diag(s*) V^T and X* = V diag(1/s*) V^T, where V and the nominal
/// spectrum come from the eigendecomposition of `nominal` and s* solves the
/// dual problem. Nominal eigenvalues in [-1e-12 lambda_max, 0) are treated as
/// zero. Throws DomainError when the nominal is outside the divergence domain.
ScopeEstimate scope_estimate(const SymMatrix& nominal, DivergenceKind kind, double tau,
                             double rho);

/// Same, reusing an eigendecomposition of the nominal.
ScopeEstimate scope_estimate(const SpectralDecomposition& nominal, DivergenceKind kind,
                             double tau, double rho);

/// -log det X + <X, S>.
double stein_loss(const SymMatrix& x, const SymMatrix& s);

/// ||Sigma||_F^2 - 2 <Sigma, S>.
double frobenius_loss(const SymMatrix& sigma, const SymMatrix& s);

/// Stein loss of the implied precision plus tau_star/2 times the Frobenius
/// loss: -log det(E^-1) + <E^-1, Sigma0> + tau/2 (||E||^2 - 2 <E, Sigma0>).
double combined_loss(const SymMatrix& estimate, const SymMatrix& sigma0, double tau_star);

/// (1/p) sum_i |lambda_i(est) - lambda_i(truth)| / lambda_i(truth), both
/// spectra in decreasing order.
double relative_eig_error(const SymMatrix& estimate, const SymMatrix& truth);

/// Frobenius norm of X* - tau Sigma* - gamma* grad_1 D(Sigma*, nominal). The
/// gradient is assembled in the nominal eigenbasis from the generator
/// derivative at the Rayleigh quotients of Sigma*.
double kkt_residual(const ScopeEstimate& estimate, const SymMatrix& nominal);

/// Ledoit-Wolf linear shrinkage toward nu I with nu = tr(S)/p, where S is the
/// 1/n covariance of the demeaned samples.
struct LinearShrinkage {
  SymMatrix estimate;
  double intensity = 0.0;
  double target_scale = 0.0;
};

LinearShrinkage lw_linear(const SampleMatrix& x);

}  // namespace scope
