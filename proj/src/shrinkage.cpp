#include "scope/shrinkage.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace scope {

namespace {

void check_mapping_args(double tau, double gamma, double b) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InvalidInput("tau must be positive and finite, got " + std::to_string(tau));
  }
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw InvalidInput("gamma must be non-negative and finite, got " +
                       std::to_string(gamma));
  }
  if (!(b >= 0.0) || !std::isfinite(b)) {
    throw InvalidInput("eigenvalue must be non-negative and finite, got " +
                       std::to_string(b));
  }
}

void check_nominal_eigenvalue(DivergenceKind kind, double b) {
  // The derivative d_a(a, b) must exist for a > 0.
  if (!in_scalar_domain(kind, 1.0, b)) {
    std::ostringstream os;
    os.precision(17);
    os << kind_label(kind) << " divergence: nominal eigenvalue " << b
       << " lies outside domain " << domain_description(kind);
    throw DomainError(kind, 1.0, b, os.str());
  }
}

// g(a) = 1/a - tau a - gamma d_a(a, b); strictly decreasing in a > 0.
double stationarity(DivergenceKind kind, double tau, double gamma, double a, double b) {
  const GeneratorEval e = evaluate_generator(kind, a, b);
  const double grad = gamma == 0.0 ? 0.0 : gamma * e.deriv_a;
  return 1.0 / a - tau * a - grad;
}

// Root of A a^2 + B a - C = 0 with A > 0, C > 0, written without cancellation.
double positive_quadratic_root(double A, double B, double C) {
  const double disc = std::sqrt(B * B + 4.0 * A * C);
  return B >= 0.0 ? 2.0 * C / (B + disc) : (-B + disc) / (2.0 * A);
}

double closed_form_phi(DivergenceKind kind, double tau, double gamma, double b) {
  switch (kind) {
    case DivergenceKind::KullbackLeibler:
      // 2 tau b a^2 + gamma a - (2 + gamma) b = 0
      return positive_quadratic_root(2.0 * tau * b, gamma, (2.0 + gamma) * b);
    case DivergenceKind::SquaredFrobenius:
      // (tau + 2 gamma) a^2 - 2 gamma b a - 1 = 0
      return positive_quadratic_root(tau + 2.0 * gamma, -2.0 * gamma * b, 1.0);
    case DivergenceKind::WeightedFrobenius:
      // (tau b + 2 gamma) a^2 - 2 gamma b a - b = 0
      return positive_quadratic_root(tau * b + 2.0 * gamma, -2.0 * gamma * b, b);
    default:
      break;
  }
  throw InvalidInput("closed_form_phi: no closed form for " + std::string(kind_label(kind)));
}

double bisect_phi(DivergenceKind kind, double tau, double gamma, double b) {
  const double target = target_scale(tau);
  double lo = std::min(b, target);
  double hi = std::max(b, target);
  for (int it = 0; it < ShrinkageTolerances::phi_max_iterations; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      const double g_lo = lo > 0.0 ? std::abs(stationarity(kind, tau, gamma, lo, b))
                                   : std::numeric_limits<double>::infinity();
      const double g_hi = std::abs(stationarity(kind, tau, gamma, hi, b));
      return g_lo < g_hi ? lo : hi;
    }
    const double g = stationarity(kind, tau, gamma, mid, b);
    if (g > 0.0) {
      lo = mid;
    } else if (g < 0.0) {
      hi = mid;
    } else {
      return mid;
    }
  }
  throw NonConvergence("phi: bisection did not converge within " +
                       std::to_string(ShrinkageTolerances::phi_max_iterations) +
                       " iterations");
}

bool has_closed_form(DivergenceKind kind) {
  return kind == DivergenceKind::KullbackLeibler ||
         kind == DivergenceKind::SquaredFrobenius ||
         kind == DivergenceKind::WeightedFrobenius;
}

}  // namespace

double target_scale(double tau) { return 1.0 / std::sqrt(tau); }

bool ShrinkageProblem::is_scalar_nominal() const {
  if (nominal_spectrum.size() == 0) return false;
  const double hi = nominal_spectrum.maxCoeff();
  const double lo = nominal_spectrum.minCoeff();
  return hi - lo <= ShrinkageTolerances::scalar_spread * std::abs(hi);
}

void ShrinkageProblem::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InvalidInput("shrinkage: tau must be positive and finite, got " +
                       std::to_string(tau));
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw InvalidInput("shrinkage: rho must be positive and finite, got " +
                       std::to_string(rho));
  }
  if (nominal_spectrum.size() == 0) throw InvalidInput("shrinkage: empty spectrum");
  for (Index i = 0; i < nominal_spectrum.size(); ++i) {
    const double b = nominal_spectrum(i);
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw InvalidInput("shrinkage: nominal eigenvalue " + std::to_string(b) +
                         " is negative or non-finite");
    }
    if (i > 0 && b < nominal_spectrum(i - 1)) {
      throw InvalidInput("shrinkage: nominal spectrum must be ascending");
    }
    check_nominal_eigenvalue(kind, b);
  }
}

namespace {

// The quadratic roots can land an ulp or two off the best representable root
// when gamma is large; walk to the neighbour with the smaller residual.
double ulp_polish(DivergenceKind kind, double tau, double gamma, double b, double a) {
  const auto signed_residual = [&](double x) {
    return 1.0 / x - tau * x - gamma * generator_deriv(kind, x, b);
  };
  const double lo = std::min(b, target_scale(tau));
  const double hi = std::max(b, target_scale(tau));
  double r = signed_residual(a);
  for (int i = 0; i < 8 && r != 0.0; ++i) {
    const double next = std::nextafter(a, r > 0.0 ? hi : lo);
    if (next == a || !(next > 0.0)) break;
    const double rn = signed_residual(next);
    if (!(std::abs(rn) < std::abs(r))) break;
    a = next;
    r = rn;
  }
  return a;
}

}  // namespace

double phi(DivergenceKind kind, double tau, double gamma, double b) {
  check_mapping_args(tau, gamma, b);
  check_nominal_eigenvalue(kind, b);
  const double target = target_scale(tau);
  if (gamma == 0.0 || b == target) return target;
  if (has_closed_form(kind)) {
    return ulp_polish(kind, tau, gamma, b, closed_form_phi(kind, tau, gamma, b));
  }
  return bisect_phi(kind, tau, gamma, b);
}

double phi_bisection(DivergenceKind kind, double tau, double gamma, double b) {
  check_mapping_args(tau, gamma, b);
  check_nominal_eigenvalue(kind, b);
  const double target = target_scale(tau);
  if (gamma == 0.0 || b == target) return target;
  return bisect_phi(kind, tau, gamma, b);
}

double phi_residual(DivergenceKind kind, double tau, double gamma, double a, double b) {
  if (!(a > 0.0)) throw InvalidInput("phi_residual: a must be positive");
  return std::abs(1.0 / a - tau * a - gamma * generator_deriv(kind, a, b));
}

double rho_max(DivergenceKind kind, double tau, const Vector& nominal_spectrum) {
  const double target = target_scale(tau);
  double total = 0.0;
  for (Index i = 0; i < nominal_spectrum.size(); ++i) {
    total += generator_value(kind, target, nominal_spectrum(i));
  }
  return total;
}

double dual_function(DivergenceKind kind, double tau, const Vector& nominal_spectrum,
                     double gamma) {
  double total = 0.0;
  for (Index i = 0; i < nominal_spectrum.size(); ++i) {
    const double b = nominal_spectrum(i);
    total += generator_value(kind, phi(kind, tau, gamma, b), b);
  }
  return total;
}

std::optional<double> closed_form_gamma_bound(DivergenceKind kind, double tau, double rho,
                                              const Vector& nominal_spectrum) {
  const Index n = nominal_spectrum.size();
  if (n == 0 || !(rho > 0.0)) return std::nullopt;
  const double target = target_scale(tau);
  const double l_min = nominal_spectrum(0);
  const double l_max = nominal_spectrum(n - 1);
  if (!(l_min < target && target < l_max)) return std::nullopt;

  const double p = static_cast<double>(n);
  const double gap = 1.0 - tau * l_max * l_max;
  const double gap_sq = gap * gap;

  switch (kind) {
    case DivergenceKind::KullbackLeibler:
      return std::max(2.0 * p / rho, (2.0 * tau * l_max * l_max + 1.0) / std::expm1(rho / p));
    case DivergenceKind::Wasserstein: {
      const auto term = [tau](double eta) {
        return (eta + std::sqrt(eta * eta + 16.0 * eta * std::pow(tau, 2.5))) /
               (8.0 * tau * tau);
      };
      return std::max(term(p / rho), term(p * gap_sq / rho));
    }
    case DivergenceKind::SymmetrizedStein: {
      const double base = p * l_max * l_max / (2.0 * rho * std::pow(l_min, 4));
      return std::sqrt(std::max(base, base * gap_sq));
    }
    case DivergenceKind::SquaredFrobenius: {
      const auto term = [tau](double eta) { return eta + std::sqrt(eta * eta + tau * eta); };
      return std::max(term(p / (4.0 * rho)), term(p * gap_sq / (4.0 * rho)));
    }
    case DivergenceKind::WeightedFrobenius: {
      const double base = p * l_max / (4.0 * rho * l_min * l_min);
      return std::sqrt(std::max(base, base * gap_sq));
    }
  }
  return std::nullopt;
}

double gamma_upper_bound(DivergenceKind kind, double tau, double rho,
                         const Vector& nominal_spectrum) {
  if (rho >= rho_max(kind, tau, nominal_spectrum)) return 0.0;
  if (const auto bound = closed_form_gamma_bound(kind, tau, rho, nominal_spectrum)) {
    if (std::isfinite(*bound) && dual_function(kind, tau, nominal_spectrum, *bound) <= rho) {
      return *bound;
    }
  }
  double gamma = 1.0;
  for (int k = 0; k <= ShrinkageTolerances::max_doublings; ++k) {
    if (dual_function(kind, tau, nominal_spectrum, gamma) <= rho) return gamma;
    gamma *= 2.0;
  }
  throw NonConvergence("gamma_upper_bound: no bracket for rho = " + std::to_string(rho) +
                       " after " + std::to_string(ShrinkageTolerances::max_doublings) +
                       " doublings");
}

DualSolution solve_dual(const ShrinkageProblem& problem) {
  problem.validate();
  const DivergenceKind kind = problem.kind;
  const double tau = problem.tau;
  const double rho = problem.rho;
  const Vector& lambda = problem.nominal_spectrum;

  DualSolution out;
  out.scalar_nominal = problem.is_scalar_nominal();
  out.rho_max = rho_max(kind, tau, lambda);

  const auto fill_spectrum = [&](double gamma) {
    out.shrunk_spectrum.resize(lambda.size());
    out.phi_residual = 0.0;
    for (Index i = 0; i < lambda.size(); ++i) {
      const double s = phi(kind, tau, gamma, lambda(i));
      out.shrunk_spectrum(i) = s;
      out.phi_residual = std::max(out.phi_residual, phi_residual(kind, tau, gamma, s, lambda(i)));
    }
  };

  if (rho >= out.rho_max) {
    out.binding = false;
    out.radius_exceeds_max = rho > out.rho_max;
    out.gamma_star = 0.0;
    out.shrunk_spectrum = Vector::Constant(lambda.size(), target_scale(tau));
    out.phi_residual = phi_residual(kind, tau, 0.0, target_scale(tau), target_scale(tau));
    return out;
  }

  // F(lo) > rho >= F(hi); F strictly decreasing.
  double lo = 0.0;
  double hi = gamma_upper_bound(kind, tau, rho, lambda);
  double f_hi = dual_function(kind, tau, lambda, hi);
  double f_lo = out.rho_max;
  int it = 0;
  for (; it < ShrinkageTolerances::dual_max_iterations; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f = dual_function(kind, tau, lambda, mid);
    if (f > rho) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
      f_hi = f;
      if (f == rho) break;
    }
  }
  if (it == ShrinkageTolerances::dual_max_iterations) {
    throw NonConvergence("solve_dual: bisection exceeded " +
                         std::to_string(ShrinkageTolerances::dual_max_iterations) +
                         " iterations");
  }

  const bool take_lo = std::abs(f_lo - rho) < std::abs(f_hi - rho) && lo > 0.0;
  out.gamma_star = take_lo ? lo : hi;
  out.dual_residual = std::abs((take_lo ? f_lo : f_hi) - rho);
  out.binding = true;
  out.iterations = it;

  if (out.dual_residual > ShrinkageTolerances::dual * std::max(1.0, rho)) {
    std::ostringstream os;
    os.precision(17);
    os << "solve_dual: dual residual " << out.dual_residual << " above tolerance at gamma "
       << out.gamma_star;
    throw NonConvergence(os.str());
  }
  fill_spectrum(out.gamma_star);
  return out;
}

}  // namespace scope
