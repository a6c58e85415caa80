#include "scope/divergence.hpp"

#include <cmath>
#include <sstream>

namespace scope {

namespace {

std::string describe(DivergenceKind kind, double a, double b, const std::string& what) {
  std::ostringstream os;
  os.precision(17);
  os << kind_label(kind) << " divergence: " << what << " (a=" << a << ", b=" << b
     << "; domain " << domain_description(kind) << ")";
  return os.str();
}

struct Extremes {
  double lo;
  double hi;
};

Extremes extreme_eigenvalues(const SymMatrix& m) {
  const Vector ev = spectral_decompose(m).eigenvalues;
  return {ev(0), ev(ev.size() - 1)};
}

bool is_definite(const Extremes& e) {
  return e.hi > 0.0 && e.lo > kSingularityThreshold * e.hi;
}

bool is_semidefinite(const Extremes& e) {
  return e.lo >= -kSingularityThreshold * std::max(e.hi, 0.0);
}

// Throws DomainError naming the offending eigenvalue.
void require_spectrum(DivergenceKind kind, const SymMatrix& m, bool definite,
                      const char* which) {
  const Extremes e = extreme_eigenvalues(m);
  const bool ok = definite ? is_definite(e) : is_semidefinite(e);
  if (!ok) {
    std::ostringstream os;
    os.precision(17);
    os << kind_label(kind) << " divergence: " << which << " argument has eigenvalue "
       << e.lo << " (largest " << e.hi << "), outside domain "
       << domain_description(kind);
    throw DomainError(kind, e.lo, e.hi, os.str());
  }
}

// Principal square root of a PSD matrix, small negative eigenvalues clipped.
Matrix psd_sqrt(const SymMatrix& m) {
  const SpectralDecomposition sd = spectral_decompose(m);
  const Vector root = sd.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return sd.basis * root.asDiagonal() * sd.basis.transpose();
}

}  // namespace

std::string_view kind_name(DivergenceKind kind) {
  switch (kind) {
    case DivergenceKind::KullbackLeibler: return "kl";
    case DivergenceKind::Wasserstein: return "wasserstein";
    case DivergenceKind::SymmetrizedStein: return "sstein";
    case DivergenceKind::SquaredFrobenius: return "sqfrob";
    case DivergenceKind::WeightedFrobenius: return "wfrob";
  }
  return "unknown";
}

std::string_view kind_label(DivergenceKind kind) {
  switch (kind) {
    case DivergenceKind::KullbackLeibler: return "Kullback-Leibler";
    case DivergenceKind::Wasserstein: return "Wasserstein";
    case DivergenceKind::SymmetrizedStein: return "Symmetrized Stein";
    case DivergenceKind::SquaredFrobenius: return "Squared Frobenius";
    case DivergenceKind::WeightedFrobenius: return "Weighted Frobenius";
  }
  return "unknown";
}

DivergenceKind parse_kind(std::string_view name) {
  for (DivergenceKind k : kAllDivergences) {
    if (kind_name(k) == name) return k;
  }
  throw InvalidInput("unknown divergence '" + std::string(name) +
                     "' (expected kl | wasserstein | sstein | sqfrob | wfrob)");
}

std::string_view domain_description(DivergenceKind kind) {
  switch (kind) {
    case DivergenceKind::KullbackLeibler:
    case DivergenceKind::SymmetrizedStein: return "S++ x S++";
    case DivergenceKind::Wasserstein:
    case DivergenceKind::SquaredFrobenius: return "S+ x S+";
    case DivergenceKind::WeightedFrobenius: return "S+ x S++";
  }
  return "unknown";
}

bool requires_definite_nominal(DivergenceKind kind) {
  return kind == DivergenceKind::KullbackLeibler ||
         kind == DivergenceKind::SymmetrizedStein ||
         kind == DivergenceKind::WeightedFrobenius;
}

DomainError::DomainError(DivergenceKind kind, double a, double b, const std::string& what)
    : Error(what), kind_(kind), a_(a), b_(b) {}

bool in_scalar_domain(DivergenceKind kind, double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  switch (kind) {
    case DivergenceKind::KullbackLeibler:
    case DivergenceKind::SymmetrizedStein: return a > 0.0 && b > 0.0;
    case DivergenceKind::WeightedFrobenius: return a >= 0.0 && b > 0.0;
    case DivergenceKind::Wasserstein:
    case DivergenceKind::SquaredFrobenius: return a >= 0.0 && b >= 0.0;
  }
  return false;
}

GeneratorEval evaluate_generator(DivergenceKind kind, double a, double b) noexcept {
  GeneratorEval out;
  if (!in_scalar_domain(kind, a, b)) return out;
  const double diff = a - b;
  switch (kind) {
    case DivergenceKind::KullbackLeibler: {
      const double x = diff / b;
      out.value = 0.5 * (x - std::log1p(x));
      out.deriv_a = diff / (2.0 * a * b);
      break;
    }
    case DivergenceKind::Wasserstein: {
      const double ra = std::sqrt(a);
      const double rb = std::sqrt(b);
      out.value = (ra - rb) * (ra - rb);
      if (b == 0.0) {
        out.deriv_a = 1.0;
      } else if (a == 0.0) {
        out.deriv_a = -std::numeric_limits<double>::infinity();
      } else {
        out.deriv_a = (ra - rb) / ra;
      }
      break;
    }
    case DivergenceKind::SymmetrizedStein:
      out.value = diff * diff / (2.0 * a * b);
      out.deriv_a = diff * (a + b) / (2.0 * a * a * b);
      break;
    case DivergenceKind::SquaredFrobenius:
      out.value = diff * diff;
      out.deriv_a = 2.0 * diff;
      break;
    case DivergenceKind::WeightedFrobenius:
      out.value = diff * diff / b;
      out.deriv_a = 2.0 * diff / b;
      break;
  }
  out.defined = true;
  return out;
}

double generator_value(DivergenceKind kind, double a, double b) {
  const GeneratorEval e = evaluate_generator(kind, a, b);
  if (!e.defined) throw DomainError(kind, a, b, describe(kind, a, b, "generator undefined"));
  return e.value;
}

double generator_deriv(DivergenceKind kind, double a, double b) {
  const GeneratorEval e = evaluate_generator(kind, a, b);
  if (!e.defined || !std::isfinite(e.deriv_a)) {
    throw DomainError(kind, a, b, describe(kind, a, b, "derivative undefined"));
  }
  return e.deriv_a;
}

double matrix_divergence(DivergenceKind kind, const SymMatrix& x, const SymMatrix& y) {
  if (x.dim() != y.dim()) throw InvalidInput("matrix_divergence: dimension mismatch");
  const double p = static_cast<double>(x.dim());

  switch (kind) {
    case DivergenceKind::KullbackLeibler: {
      require_spectrum(kind, x, true, "first");
      require_spectrum(kind, y, true, "second");
      const SymMatrix y_inv = invert_spd(y);
      const double tr = frobenius_inner(y_inv, x);
      return 0.5 * (tr - p + log_det_spd(y) - log_det_spd(x));
    }
    case DivergenceKind::Wasserstein: {
      require_spectrum(kind, x, false, "first");
      require_spectrum(kind, y, false, "second");
      const Matrix root = psd_sqrt(x);
      const SymMatrix inner = sandwich(root, y);
      const Vector mu = spectral_decompose(inner).eigenvalues;
      const double scale = std::max(1.0, std::abs(mu(mu.size() - 1)));
      double cross = 0.0;
      for (Index i = 0; i < mu.size(); ++i) {
        if (mu(i) < -1e-10 * scale) {
          throw DomainError(kind, mu(i), 0.0,
                            describe(kind, mu(i), 0.0,
                                     "X^1/2 Y X^1/2 has a negative eigenvalue"));
        }
        cross += std::sqrt(std::max(mu(i), 0.0));
      }
      return std::max(0.0, trace(x) + trace(y) - 2.0 * cross);
    }
    case DivergenceKind::SymmetrizedStein: {
      require_spectrum(kind, x, true, "first");
      require_spectrum(kind, y, true, "second");
      const double t1 = frobenius_inner(invert_spd(y), x);
      const double t2 = frobenius_inner(invert_spd(x), y);
      return 0.5 * (t1 + t2 - 2.0 * p);
    }
    case DivergenceKind::SquaredFrobenius: {
      require_spectrum(kind, x, false, "first");
      require_spectrum(kind, y, false, "second");
      return (x.matrix() - y.matrix()).squaredNorm();
    }
    case DivergenceKind::WeightedFrobenius: {
      require_spectrum(kind, x, false, "first");
      require_spectrum(kind, y, true, "second");
      const Matrix diff = x.matrix() - y.matrix();
      return (diff * invert_spd(y).matrix() * diff).trace();
    }
  }
  return 0.0;
}

bool domain_check(DivergenceKind kind, const SymMatrix& s) {
  const Extremes e = extreme_eigenvalues(s);
  return requires_definite_nominal(kind) ? is_definite(e) : is_semidefinite(e);
}

}  // namespace scope
