#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "scope/divergence.hpp"
#include "scope/error.hpp"
#include "scope/linalg.hpp"

namespace scope {

/// tau* = p / ||sigma||_F^2; the induced target (||sigma||_F / sqrt(p)) I has
/// the same Frobenius norm as sigma. Throws ZeroMatrix for sigma = 0.
double tau_star(const SymMatrix& sigma);

/// Asymptotic radius constant rho* (rho_n ~ rho* / n^2) for Gaussian data,
/// evaluated from the spectrum of sigma0 with tau* = p / ||sigma0||_F^2:
///
///   KL:  (p+1)^2 ||S^-1||^4 / (16 g^2) * sum (1 - tau* l_i^2)^2
///   SS:  same with 32 in place of 16
///   W:   (p+1)^2 p^2 / (256 h^2) * sum (1 - tau* l_i^2)^2 / l_i
///
/// with g = ||S^-1||_F^2 - p^2 / ||S||_F^2 and h = tr(S^-1) - p tr(S) / ||S||_F^2.
/// Frobenius-type kinds throw Unsupported, scalar sigma0 throws ScalarMatrix,
/// singular sigma0 throws SingularMatrix.
double rho_star_asymptotic(DivergenceKind kind, const SymMatrix& sigma0);

/// rho* from a strictly positive spectrum (any order).
double rho_star_from_spectrum(DivergenceKind kind, const Vector& eigenvalues);

struct TuningResult {
  DivergenceKind kind = DivergenceKind::KullbackLeibler;
  Index n = 0;
  double tau_star = 0.0;
  double target_scale = 0.0;
  double rho_star_constant = 0.0;
  double rho_n = 0.0;
  /// Number of eigenvalues the constant was evaluated on (< p for a singular
  /// matrix, see plug_in_radius).
  Index effective_rank = 0;
};

/// Plug-in target and radius: tau = tau_star(matrix), rho_n = rho* / n^2.
/// For a singular matrix the constant is evaluated on its positive
/// eigenvalues only (those above 1e-12 lambda_max); at least two distinct
/// ones are needed.
TuningResult plug_in_radius(DivergenceKind kind, const SymMatrix& matrix, Index n);

/// Whether plug-in tuning exists for this divergence.
bool supports_plug_in(DivergenceKind kind);

/// `count` log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// 60 log-spaced radii on [1e-5, 2e3].
std::vector<double> default_radius_grid();

struct GridSearchResult {
  double rho_best = 0.0;
  std::size_t best_index = 0;
  std::vector<double> losses;
};

/// Oracle failure at a specific grid point.
class GridSearchError : public Error {
 public:
  GridSearchError(double rho, const std::string& cause);
  double rho() const { return rho_; }

 private:
  double rho_;
};

struct GridSearchOptions {
  /// Worker threads; > 1 requires an oracle that is safe to call
  /// concurrently.
  std::size_t threads = 1;
};

/// Argmin of the oracle over the grid; ties go to the smaller radius.
GridSearchResult grid_search_radius(std::span<const double> grid,
                                    const std::function<double(double)>& loss_oracle,
                                    GridSearchOptions options = {});

}  // namespace scope
