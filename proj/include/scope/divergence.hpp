#pragma once

#include <array>
#include <string>
#include <string_view>

#include "scope/error.hpp"
#include "scope/linalg.hpp"

namespace scope {

/// The five convex spectral divergences D(Sigma, Sigma_hat), each fixed by a
/// scalar generator d(a, b) summed over matched eigenvalues:
///
///   KullbackLeibler    d = (a/b - 1 - log(a/b)) / 2     a > 0, b > 0
///   Wasserstein        d = a + b - 2 sqrt(ab)           a >= 0, b >= 0
///   SymmetrizedStein   d = (b/a + a/b - 2) / 2          a > 0, b > 0
///   SquaredFrobenius   d = (a - b)^2                    a >= 0, b >= 0
///   WeightedFrobenius  d = (a - b)^2 / b                a >= 0, b > 0
enum class DivergenceKind {
  KullbackLeibler,
  Wasserstein,
  SymmetrizedStein,
  SquaredFrobenius,
  WeightedFrobenius,
};

inline constexpr std::array<DivergenceKind, 5> kAllDivergences = {
    DivergenceKind::KullbackLeibler, DivergenceKind::Wasserstein,
    DivergenceKind::SymmetrizedStein, DivergenceKind::SquaredFrobenius,
    DivergenceKind::WeightedFrobenius};

/// CLI name: kl | wasserstein | sstein | sqfrob | wfrob.
std::string_view kind_name(DivergenceKind kind);
/// Human-readable name, used in error messages.
std::string_view kind_label(DivergenceKind kind);
/// Inverse of kind_name; throws InvalidInput on an unknown name.
DivergenceKind parse_kind(std::string_view name);

/// Matrix domain of D as text, e.g. "S++ x S++".
std::string_view domain_description(DivergenceKind kind);

/// True when the kind needs a positive definite second argument.
bool requires_definite_nominal(DivergenceKind kind);

/// Relative eigenvalue threshold below which a matrix counts as singular.
inline constexpr double kSingularityThreshold = 1e-12;

/// Argument outside the divergence domain. Carries the offending values.
class DomainError : public Error {
 public:
  DomainError(DivergenceKind kind, double a, double b, const std::string& what);

  DivergenceKind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  DivergenceKind kind_;
  double a_;
  double b_;
};

struct GeneratorEval {
  double value = 0.0;
  double deriv_a = 0.0;
  bool defined = false;
};

bool in_scalar_domain(DivergenceKind kind, double a, double b);

double generator_value(DivergenceKind kind, double a, double b);
/// Partial derivative of d(a, b) with respect to a.
double generator_deriv(DivergenceKind kind, double a, double b);
/// Value and derivative without throwing; `defined` is false off-domain.
GeneratorEval evaluate_generator(DivergenceKind kind, double a, double b) noexcept;

/// D(x, y) from the matrix formulas. The first argument is the candidate
/// covariance, the second the nominal one.
double matrix_divergence(DivergenceKind kind, const SymMatrix& x, const SymMatrix& y);

/// True iff D(s, s) is finite.
bool domain_check(DivergenceKind kind, const SymMatrix& s);

}  // namespace scope
