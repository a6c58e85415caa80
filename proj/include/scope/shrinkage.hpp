#pragma once

#include <optional>

#include "scope/divergence.hpp"
#include "scope/linalg.hpp"

namespace scope {

/// Solver tolerances, used everywhere the shrinkage solve is checked.
struct ShrinkageTolerances {
  /// |F(gamma*) - rho| <= dual * max(1, rho).
  static constexpr double dual = 1e-8;
  /// Residual of the eigenvalue equation, relative to 1/a + tau a.
  static constexpr double phi = 1e-12;
  /// Bisection cap for the eigenvalue mapping.
  static constexpr int phi_max_iterations = 200;
  /// Bisection cap for the dual variable.
  static constexpr int dual_max_iterations = 500;
  /// Doublings allowed when no closed-form bound applies.
  static constexpr int max_doublings = 64;
  /// Spread below which the nominal spectrum counts as a multiple of I.
  static constexpr double scalar_spread = 1e-12;
};

/// Inputs of one shrinkage solve. The spectrum ascends and is non-negative.
struct ShrinkageProblem {
  DivergenceKind kind = DivergenceKind::KullbackLeibler;
  double tau = 1.0;
  double rho = 1.0;
  Vector nominal_spectrum;

  /// max - min < 1e-12 * max: the nominal is sigma * I and robustification is
  /// void.
  bool is_scalar_nominal() const;
  /// Throws InvalidInput / DomainError when the invariants fail.
  void validate() const;
};

struct DualSolution {
  double gamma_star = 0.0;
  Vector shrunk_spectrum;
  double rho_max = 0.0;
  bool binding = false;
  /// rho was larger than rho_max and was routed to the unconstrained optimum.
  bool radius_exceeds_max = false;
  /// The nominal spectrum is scalar (see ShrinkageProblem::is_scalar_nominal).
  bool scalar_nominal = false;
  /// |F(gamma*) - rho| for binding solves, 0 otherwise.
  double dual_residual = 0.0;
  /// max_i |1/s_i - tau s_i - gamma* d_a(s_i, lambda_i)|.
  double phi_residual = 0.0;
  int iterations = 0;
};

/// The shrinkage target scale 1/sqrt(tau).
double target_scale(double tau);

/// Unique positive root a of 1/a - tau a - gamma d_a(a, b) = 0. Closed forms
/// for Kullback-Leibler and both Frobenius kinds, bisection on the bracket
/// [min(b, 1/sqrt(tau)), max(b, 1/sqrt(tau))] otherwise.
double phi(DivergenceKind kind, double tau, double gamma, double b);

/// Same root by plain bisection for every kind.
double phi_bisection(DivergenceKind kind, double tau, double gamma, double b);

/// |1/a - tau a - gamma d_a(a, b)|.
double phi_residual(DivergenceKind kind, double tau, double gamma, double a, double b);

/// sum_i d(1/sqrt(tau), lambda_i): the radius at which the constraint stops
/// binding.
double rho_max(DivergenceKind kind, double tau, const Vector& nominal_spectrum);

/// F(gamma) = sum_i d(phi(tau, gamma, lambda_i), lambda_i).
double dual_function(DivergenceKind kind, double tau, const Vector& nominal_spectrum,
                     double gamma);

/// Closed-form upper bound on gamma*, available only when
/// lambda_1 < 1/sqrt(tau) < lambda_p.
std::optional<double> closed_form_gamma_bound(DivergenceKind kind, double tau, double rho,
                                              const Vector& nominal_spectrum);

/// A gamma with F(gamma) <= rho: the closed-form bound when it applies and
/// checks out, otherwise doubling from 1. Returns 0 when rho >= rho_max.
double gamma_upper_bound(DivergenceKind kind, double tau, double rho,
                         const Vector& nominal_spectrum);

/// Dual bisection for gamma* and the shrunk spectrum.
DualSolution solve_dual(const ShrinkageProblem& problem);

}  // namespace scope
