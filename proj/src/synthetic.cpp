#include "scope/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scope {

SampleMatrix::SampleMatrix(Matrix rows) : rows_(std::move(rows)) {
  if (rows_.rows() < 1 || rows_.cols() < 1) {
    throw InvalidInput("SampleMatrix: need at least one row and one column");
  }
  if (!rows_.allFinite()) throw InvalidInput("SampleMatrix: non-finite entry");
}

Vector SampleMatrix::mean() const { return rows_.colwise().mean().transpose(); }

Matrix random_orthogonal(Index p, Rng& rng) {
  if (p < 1) throw InvalidInput("random_orthogonal: p must be >= 1");
  Matrix g(p, p);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j) g(i, j) = rng.normal();

  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(p, p);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < p; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

SymMatrix make_ground_truth(const Matrix& orthogonal) {
  const Index p = orthogonal.rows();
  if (p < 2 || orthogonal.cols() != p) {
    throw InvalidInput("make_ground_truth: need a square orthogonal factor with p >= 2");
  }
  const Vector lambda = Vector::LinSpaced(p, 1.0, static_cast<double>(p));
  const Matrix m = orthogonal.transpose() * lambda.asDiagonal() * orthogonal;
  return SymMatrix(0.5 * (m + m.transpose()));
}

SymMatrix make_ground_truth(Index p, Rng& rng) {
  if (p < 2) throw InvalidInput("make_ground_truth: p must be >= 2");
  return make_ground_truth(random_orthogonal(p, rng));
}

SampleMatrix sample_mvn(const SymMatrix& sigma0, Index n, Rng& rng) {
  if (n < 1) throw InvalidInput("sample_mvn: n must be >= 1");
  const SpectralDecomposition sd = spectral_decompose(sigma0);
  const Index p = sigma0.dim();
  const double top = sd.eigenvalues(p - 1);
  const double floor = -1e-10 * std::max(1.0, top);
  Vector root(p);
  for (Index i = 0; i < p; ++i) {
    const double lambda = sd.eigenvalues(i);
    if (lambda < floor) {
      throw InvalidInput("sample_mvn: covariance has negative eigenvalue " +
                         std::to_string(lambda));
    }
    root(i) = std::sqrt(std::max(lambda, 0.0));
  }
  const Matrix factor = sd.basis * root.asDiagonal();

  Matrix z(p, n);
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < p; ++i) z(i, k) = rng.normal();
  return SampleMatrix((factor * z).transpose());
}

SymMatrix sample_covariance(const SampleMatrix& x, CovarianceMode mode) {
  const Index n = x.n();
  Matrix m;
  if (mode == CovarianceMode::Uncentered) {
    m = x.rows().transpose() * x.rows() / static_cast<double>(n);
  } else {
    if (n < 2) throw InvalidInput("sample_covariance: centered mode needs n >= 2");
    const Matrix centered = x.rows().rowwise() - x.rows().colwise().mean();
    m = centered.transpose() * centered / static_cast<double>(n - 1);
  }
  return SymMatrix(0.5 * (m + m.transpose()));
}

SymMatrix wishart_sqmoment_oracle(const SymMatrix& sigma0, Index n) {
  if (n < 1) throw InvalidInput("wishart_sqmoment_oracle: n must be >= 1");
  const Matrix& s = sigma0.matrix();
  const double inv_n = 1.0 / static_cast<double>(n);
  const Matrix sq = s * s;
  const Matrix m = inv_n * sq + inv_n * s.trace() * s + sq;
  return SymMatrix(0.5 * (m + m.transpose()));
}

}  // namespace scope
