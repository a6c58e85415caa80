#pragma once

#include <algorithm>
#include <cmath>

#include "scope/linalg.hpp"
#include "scope/rng.hpp"
#include "scope/synthetic.hpp"

namespace scope::fixtures {

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

/// Q diag(e) Q^T with log-uniform eigenvalues in [lo, hi].
inline SymMatrix random_spd(Index p, Rng& rng, double lo = 0.1, double hi = 10.0) {
  const Matrix q = random_orthogonal(p, rng);
  Vector e(p);
  for (Index i = 0; i < p; ++i) e(i) = std::exp(uniform(rng, std::log(lo), std::log(hi)));
  return SymMatrix(q * e.asDiagonal() * q.transpose());
}

inline Vector random_spectrum(Index p, Rng& rng, double lo, double hi) {
  Vector e(p);
  for (Index i = 0; i < p; ++i) e(i) = std::exp(uniform(rng, std::log(lo), std::log(hi)));
  std::sort(e.data(), e.data() + p);
  return e;
}

inline Matrix gaussian(Index rows, Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

}  // namespace scope::fixtures
