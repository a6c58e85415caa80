#pragma once

#include <Eigen/Dense>

#include "scope/error.hpp"

namespace scope {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Eigenvalues at or below this fraction of the largest one count as zero.
inline constexpr double kInvertibilityThreshold = 1e-14;

/// Dense symmetric matrix. Construction rejects non-finite entries and
/// asymmetry above 1e-12 (relative to the largest entry, floor 1), then stores
/// the exact symmetric part (A + A^T) / 2.
class SymMatrix {
 public:
  explicit SymMatrix(const Matrix& values);

  static SymMatrix identity(Index p);
  static SymMatrix diagonal(const Vector& d);
  static SymMatrix zero(Index p);

  Index dim() const { return values_.rows(); }
  const Matrix& matrix() const { return values_; }
  double operator()(Index i, Index j) const { return values_(i, j); }

 private:
  Matrix values_;
};

/// Eigenpairs of a symmetric matrix. Eigenvalues ascend; each basis column is
/// signed so its largest-magnitude entry (first one on ties) is positive.
struct SpectralDecomposition {
  Vector eigenvalues;
  Matrix basis;
};

SpectralDecomposition spectral_decompose(const SymMatrix& a);

/// basis * diag(spectrum) * basis^T.
SymMatrix reconstruct(const Matrix& basis, const Vector& spectrum);

/// lambda_max / lambda_min; throws SingularMatrix when
/// lambda_min <= kInvertibilityThreshold * lambda_max.
double condition_number(const SymMatrix& a);

double frobenius_inner(const SymMatrix& a, const SymMatrix& b);
double frobenius_norm(const SymMatrix& a);
double trace(const SymMatrix& a);

/// Inverse through the reciprocal spectrum in the same eigenbasis.
SymMatrix invert_spd(const SymMatrix& a);

/// log det of a positive definite matrix, summed over the spectrum.
double log_det_spd(const SymMatrix& a);

/// Matrix product of two symmetric matrices, symmetrized.
SymMatrix sandwich(const Matrix& left, const SymMatrix& middle);

}  // namespace scope
