#include "scope/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scope {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

void canonicalize_signs(Matrix& basis) {
  for (Index j = 0; j < basis.cols(); ++j) {
    Index arg = 0;
    double best = -1.0;
    for (Index i = 0; i < basis.rows(); ++i) {
      const double mag = std::abs(basis(i, j));
      // Strict comparison keeps the first of tied entries.
      if (mag > best * (1.0 + 1e-12)) {
        best = mag;
        arg = i;
      }
    }
    if (basis(arg, j) < 0.0) basis.col(j) *= -1.0;
  }
}

}  // namespace

SymMatrix::SymMatrix(const Matrix& values) {
  if (values.rows() != values.cols()) {
    throw InvalidInput("SymMatrix: matrix is " + std::to_string(values.rows()) +
                       "x" + std::to_string(values.cols()) + ", not square");
  }
  if (values.rows() < 1) throw InvalidInput("SymMatrix: dimension must be >= 1");
  if (!values.allFinite()) throw InvalidInput("SymMatrix: non-finite entry");

  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  const double asym = (values - values.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale) {
    throw InvalidInput("SymMatrix: asymmetry " + std::to_string(asym) +
                       " exceeds tolerance");
  }
  values_ = 0.5 * (values + values.transpose());
}

SymMatrix SymMatrix::identity(Index p) { return SymMatrix(Matrix::Identity(p, p)); }

SymMatrix SymMatrix::diagonal(const Vector& d) {
  return SymMatrix(Matrix(d.asDiagonal()));
}

SymMatrix SymMatrix::zero(Index p) { return SymMatrix(Matrix::Zero(p, p)); }

SpectralDecomposition spectral_decompose(const SymMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NonConvergence("spectral_decompose: eigen-solver did not converge");
  }
  SpectralDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  canonicalize_signs(out.basis);
  return out;
}

SymMatrix reconstruct(const Matrix& basis, const Vector& spectrum) {
  if (basis.rows() != basis.cols() || basis.cols() != spectrum.size()) {
    throw InvalidInput("reconstruct: basis is " + std::to_string(basis.rows()) + "x" +
                       std::to_string(basis.cols()) + " but spectrum has " +
                       std::to_string(spectrum.size()) + " entries");
  }
  if (!spectrum.allFinite()) throw InvalidInput("reconstruct: non-finite spectrum");
  const Matrix m = basis * spectrum.asDiagonal() * basis.transpose();
  return SymMatrix(0.5 * (m + m.transpose()));
}

double condition_number(const SymMatrix& a) {
  const Vector ev = spectral_decompose(a).eigenvalues;
  const double lo = ev(0);
  const double hi = ev(ev.size() - 1);
  if (hi <= 0.0 || lo <= kInvertibilityThreshold * hi) {
    throw SingularMatrix("condition_number: smallest eigenvalue " + std::to_string(lo) +
                         " is not positive relative to largest " + std::to_string(hi));
  }
  return hi / lo;
}

double frobenius_inner(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidInput("frobenius_inner: dimension mismatch");
  return a.matrix().cwiseProduct(b.matrix()).sum();
}

double frobenius_norm(const SymMatrix& a) { return a.matrix().norm(); }

double trace(const SymMatrix& a) { return a.matrix().trace(); }

SymMatrix invert_spd(const SymMatrix& a) {
  const SpectralDecomposition sd = spectral_decompose(a);
  const double lo = sd.eigenvalues(0);
  const double hi = sd.eigenvalues(sd.eigenvalues.size() - 1);
  if (hi <= 0.0 || lo <= kInvertibilityThreshold * hi) {
    throw SingularMatrix("invert_spd: smallest eigenvalue " + std::to_string(lo) +
                         " is not positive relative to largest " + std::to_string(hi));
  }
  return reconstruct(sd.basis, sd.eigenvalues.cwiseInverse());
}

double log_det_spd(const SymMatrix& a) {
  const Vector ev = spectral_decompose(a).eigenvalues;
  const double hi = ev(ev.size() - 1);
  if (hi <= 0.0 || ev(0) <= kInvertibilityThreshold * hi) {
    throw SingularMatrix("log_det_spd: matrix is not positive definite");
  }
  return ev.array().log().sum();
}

SymMatrix sandwich(const Matrix& left, const SymMatrix& middle) {
  const Matrix m = left * middle.matrix() * left.transpose();
  return SymMatrix(0.5 * (m + m.transpose()));
}

}  // namespace scope
