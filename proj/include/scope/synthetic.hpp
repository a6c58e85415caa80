#pragma once

#include "scope/linalg.hpp"
#include "scope/rng.hpp"

namespace scope {

/// n observations of a p-dimensional vector, one per row. Entries are finite.
class SampleMatrix {
 public:
  explicit SampleMatrix(Matrix rows);

  Index n() const { return rows_.rows(); }
  Index p() const { return rows_.cols(); }
  const Matrix& rows() const { return rows_; }

  Vector mean() const;

 private:
  Matrix rows_;
};

enum class CovarianceMode {
  Uncentered,  ///< (1/n) sum x x^T
  Centered,    ///< (1/(n-1)) sum (x - mean)(x - mean)^T
};

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, sign-fixed R).
Matrix random_orthogonal(Index p, Rng& rng);

/// V^T diag(1, ..., p) V with V = random_orthogonal(p, rng).
SymMatrix make_ground_truth(Index p, Rng& rng);

/// Ground truth with a caller-supplied orthogonal factor.
SymMatrix make_ground_truth(const Matrix& orthogonal);

/// n i.i.d. rows from N(0, sigma0), drawn as V diag(sqrt(lambda)) z. Singular
/// sigma0 is allowed; eigenvalues in [-1e-10 * max(1, lambda_max), 0) are
/// clipped to zero, anything more negative is rejected.
SampleMatrix sample_mvn(const SymMatrix& sigma0, Index n, Rng& rng);

SymMatrix sample_covariance(const SampleMatrix& x, CovarianceMode mode);

/// Closed-form E[S_n^2] for the uncentered sample covariance S_n of n draws
/// from N(0, sigma0): (1/n) sigma0^2 + (1/n) tr(sigma0) sigma0 + sigma0^2.
/// Only meant as a Monte-Carlo test oracle.
SymMatrix wishart_sqmoment_oracle(const SymMatrix& sigma0, Index n);

}  // namespace scope
