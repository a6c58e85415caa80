#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "scope/estimator.hpp"
#include "scope/tuning.hpp"
#include "test_support.hpp"

using namespace scope;

namespace {

SymMatrix diag2(double a, double b) {
  Vector d(2);
  d << a, b;
  return SymMatrix::diagonal(d);
}

}  // namespace

TEST(ScopeEstimate, TrivialAtRhoMax) {
  Rng rng(41);
  for (DivergenceKind k : kAllDivergences) {
    const SymMatrix nominal = fixtures::random_spd(4, rng);
    const double tau = 0.5;
    const Vector l = spectral_decompose(nominal).eigenvalues;
    const ScopeEstimate e = scope_estimate(nominal, k, tau, rho_max(k, tau, l));
    EXPECT_LT((e.sigma_star.matrix() - Matrix::Identity(4, 4) / std::sqrt(tau)).norm(), 1e-10);
    EXPECT_EQ(e.gamma_star, 0.0);
    EXPECT_FALSE(e.binding);
    EXPECT_NEAR(kkt_residual(e, nominal), 0.0, 1e-12);
  }
}

TEST(ScopeEstimate, TinyRadiusRecoversNominal) {
  Rng rng(42);
  for (DivergenceKind k : kAllDivergences) {
    const SymMatrix nominal = fixtures::random_spd(4, rng);
    const Vector l = spectral_decompose(nominal).eigenvalues;
    const ScopeEstimate e = scope_estimate(nominal, k, 1.0, 1e-10 * rho_max(k, 1.0, l));
    EXPECT_LT((e.sigma_star.matrix() - nominal.matrix()).norm(), 1e-3 * frobenius_norm(nominal));
  }
}

TEST(ScopeEstimate, KlExampleEndToEnd) {
  const SymMatrix nominal = diag2(0.5, 2);
  const ScopeEstimate e = scope_estimate(nominal, DivergenceKind::KullbackLeibler, 1, 0.125);
  EXPECT_GT(e.gamma_star, 0.0);
  EXPECT_DOUBLE_EQ(e.rho_max, 0.25);
  EXPECT_GT(e.shrunk_spectrum(0), 0.5);
  EXPECT_LT(e.shrunk_spectrum(0), 1.0);
  EXPECT_GT(e.shrunk_spectrum(1), 1.0);
  EXPECT_LT(e.shrunk_spectrum(1), 2.0);
  EXPECT_LT(kkt_residual(e, nominal), 1e-8);
  EXPECT_LT(e.condition_after, e.condition_before);
}

TEST(ScopeEstimate, KktDetectsPerturbation) {
  const SymMatrix nominal = diag2(0.5, 2);
  ScopeEstimate e = scope_estimate(nominal, DivergenceKind::KullbackLeibler, 1, 0.125);
  const SpectralDecomposition sd = spectral_decompose(nominal);
  Vector s = e.shrunk_spectrum;
  s(0) += 1e-3;
  e.sigma_star = reconstruct(sd.basis, s);
  e.x_star = reconstruct(sd.basis, s.cwiseInverse());
  EXPECT_GT(kkt_residual(e, nominal), 1e-4);
}

TEST(ScopeEstimate, RejectsBadParameters) {
  const SymMatrix nominal = diag2(0.5, 2);
  EXPECT_THROW(scope_estimate(nominal, DivergenceKind::KullbackLeibler, 0, 0.1), InvalidInput);
  EXPECT_THROW(scope_estimate(nominal, DivergenceKind::KullbackLeibler, 1, 0), InvalidInput);
  EXPECT_THROW(scope_estimate(diag2(0, 2), DivergenceKind::KullbackLeibler, 1, 0.1), DomainError);
  EXPECT_THROW(scope_estimate(diag2(0, 2), DivergenceKind::SymmetrizedStein, 1, 0.1), DomainError);
  EXPECT_THROW(scope_estimate(diag2(0, 2), DivergenceKind::WeightedFrobenius, 1, 0.1), DomainError);
  EXPECT_THROW(scope_estimate(diag2(-1, 2), DivergenceKind::Wasserstein, 1, 0.1), DomainError);
}

TEST(ScopeEstimateProperty, ConditionNumberDecreasesInRho) {
  Rng rng(43);
  for (DivergenceKind k : kAllDivergences) {
    for (int t = 0; t < 10; ++t) {
      const SymMatrix nominal = fixtures::random_spd(5, rng, 0.1, 10);
      const SpectralDecomposition sd = spectral_decompose(nominal);
      const double tau = tau_star(nominal);
      const double rm = rho_max(k, tau, sd.eigenvalues);
      double prev = condition_number(nominal);
      for (double f : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        const double kappa = scope_estimate(sd, k, tau, f * rm).condition_after;
        EXPECT_LT(kappa, prev) << kind_name(k) << " fraction " << f;
        prev = kappa;
      }
    }
  }
}

TEST(ScopeEstimateProperty, PrecisionIsInverse) {
  Rng rng(44);
  for (DivergenceKind k : kAllDivergences) {
    const SymMatrix nominal = fixtures::random_spd(6, rng);
    const ScopeEstimate e = scope_estimate(nominal, k, tau_star(nominal), 0.05);
    EXPECT_LT((e.x_star.matrix() - invert_spd(e.sigma_star).matrix()).norm(), 1e-9);
    EXPECT_LT((e.x_star.matrix() * e.sigma_star.matrix() - Matrix::Identity(6, 6)).norm(), 1e-9);
  }
}

TEST(ScopeEstimateProperty, RotationEquivariance) {
  Rng rng(45);
  for (DivergenceKind k : kAllDivergences) {
    for (int t = 0; t < 10; ++t) {
      const SymMatrix nominal = fixtures::random_spd(5, rng);
      const Matrix r = random_orthogonal(5, rng);
      const double tau = tau_star(nominal);
      const double rho = 0.3 * rho_max(k, tau, spectral_decompose(nominal).eigenvalues);
      const Matrix lhs = scope_estimate(sandwich(r, nominal), k, tau, rho).sigma_star.matrix();
      const Matrix rhs = r * scope_estimate(nominal, k, tau, rho).sigma_star.matrix() * r.transpose();
      EXPECT_LT((lhs - rhs).norm(), 1e-7 * frobenius_norm(nominal)) << kind_name(k);
    }
  }
}

TEST(ScopeEstimateProperty, KktOnBindingSolves) {
  Rng rng(46);
  for (DivergenceKind k : kAllDivergences) {
    for (int t = 0; t < 10; ++t) {
      const SymMatrix nominal = fixtures::random_spd(6, rng, 0.05, 20);
      const double tau = tau_star(nominal);
      const double rho = 0.5 * rho_max(k, tau, spectral_decompose(nominal).eigenvalues);
      const ScopeEstimate e = scope_estimate(nominal, k, tau, rho);
      ASSERT_TRUE(e.binding);
      EXPECT_LT(kkt_residual(e, nominal), 1e-8 * (1 + tau * e.shrunk_spectrum.maxCoeff())) << kind_name(k);
    }
  }
}

TEST(ScopeEstimateProperty, SingularNominalUnderWassersteinAndFrobenius) {
  Rng rng(47);
  const SymMatrix sigma0 = make_ground_truth(10, rng);
  const SymMatrix nominal = sample_covariance(sample_mvn(sigma0, 5, rng), CovarianceMode::Uncentered);
  EXPECT_THROW(invert_spd(nominal), SingularMatrix);
  for (DivergenceKind k : {DivergenceKind::Wasserstein, DivergenceKind::SquaredFrobenius}) {
    const ScopeEstimate e = scope_estimate(nominal, k, tau_star(nominal), 0.1);
    EXPECT_GT(spectral_decompose(e.sigma_star).eigenvalues(0), 0.0);
    EXPECT_TRUE(std::isfinite(combined_loss(e.sigma_star, sigma0, tau_star(sigma0))));
    EXPECT_TRUE(std::isinf(e.condition_before));
  }
}

TEST(Losses, SteinExamples) {
  EXPECT_DOUBLE_EQ(stein_loss(SymMatrix::identity(2), SymMatrix::identity(2)), 2.0);
  EXPECT_NEAR(stein_loss(diag2(0.5, 0.5), diag2(2, 2)), -std::log(0.25) + 2, 1e-14);
  EXPECT_NEAR(stein_loss(diag2(0.5, 0.5), diag2(2, 2)), 3.386294, 1e-6);
}

TEST(Losses, SteinMinimizedAtInverse) {
  const SymMatrix s = diag2(2, 3);
  const double base = stein_loss(invert_spd(s), s);
  for (double eps : {-1e-3, 1e-3}) {
    EXPECT_GT(stein_loss(diag2(0.5 + eps, 1.0 / 3.0), s), base);
    EXPECT_GT(stein_loss(diag2(0.5, 1.0 / 3.0 + eps), s), base);
  }
}

TEST(Losses, FrobeniusExamples) {
  EXPECT_DOUBLE_EQ(frobenius_loss(SymMatrix::identity(2), SymMatrix::identity(2)), -2.0);
  EXPECT_DOUBLE_EQ(frobenius_loss(SymMatrix::zero(2), SymMatrix::identity(2)), 0.0);
  const SymMatrix s = diag2(1, 3);
  const double base = frobenius_loss(s, s);
  EXPECT_GT(frobenius_loss(diag2(1.01, 3), s), base);
  EXPECT_GT(frobenius_loss(diag2(1, 2.99), s), base);
}

TEST(Losses, CombinedExamples) {
  for (Index p : {1, 3, 7}) {
    EXPECT_NEAR(combined_loss(SymMatrix::identity(p), SymMatrix::identity(p), 1.0), p / 2.0, 1e-14);
  }
  EXPECT_NEAR(combined_loss(SymMatrix::diagonal(Vector::Constant(1, 2)), SymMatrix::identity(1), 1.0),
              std::log(2.0) + 0.5, 1e-14);
  EXPECT_THROW(combined_loss(diag2(0, 1), SymMatrix::identity(2), 1.0), SingularMatrix);
}

TEST(Losses, CombinedDecomposition) {
  Rng rng(48);
  for (int t = 0; t < 20; ++t) {
    const SymMatrix est = fixtures::random_spd(4, rng);
    const SymMatrix truth = fixtures::random_spd(4, rng);
    const double tau = fixtures::uniform(rng, 0.1, 3);
    const double whole = combined_loss(est, truth, tau);
    const double parts = stein_loss(invert_spd(est), truth) + 0.5 * tau * frobenius_loss(est, truth);
    EXPECT_NEAR(whole, parts, 1e-10 * std::max(1.0, std::abs(whole)));
  }
}

TEST(Losses, RelativeEigError) {
  Rng rng(49);
  const SymMatrix s = fixtures::random_spd(4, rng);
  EXPECT_NEAR(relative_eig_error(s, s), 0.0, 1e-14);
  EXPECT_NEAR(relative_eig_error(SymMatrix(2 * s.matrix()), s), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(relative_eig_error(diag2(2, 1), diag2(4, 1)), 0.25);
}

TEST(LedoitWolf, ZeroSamples) {
  const LinearShrinkage lw = lw_linear(SampleMatrix(Matrix::Zero(5, 3)));
  EXPECT_EQ(lw.intensity, 0.0);
  EXPECT_EQ(lw.estimate.matrix(), Matrix::Zero(3, 3));
}

TEST(LedoitWolf, ConsistentForIdentity) {
  Rng rng(50);
  const SampleMatrix x = sample_mvn(SymMatrix::identity(3), 20000, rng);
  EXPECT_LT((lw_linear(x).estimate.matrix() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 0.05);
}

TEST(LedoitWolf, EigenvaluesBetweenSampleAndTarget) {
  Rng rng(51);
  for (int t = 0; t < 20; ++t) {
    const SampleMatrix x = sample_mvn(fixtures::random_spd(6, rng), 10, rng);
    const LinearShrinkage lw = lw_linear(x);
    EXPECT_GE(lw.intensity, 0.0);
    EXPECT_LE(lw.intensity, 1.0);
    Matrix centered = x.rows().rowwise() - x.mean().transpose();
    const SymMatrix s(centered.transpose() * centered / static_cast<double>(x.n()));
    const Vector ls = spectral_decompose(s).eigenvalues;
    const Vector le = spectral_decompose(lw.estimate).eigenvalues;
    for (Index i = 0; i < 6; ++i) {
      EXPECT_GE(le(i), std::min(ls(i), lw.target_scale) - 1e-10);
      EXPECT_LE(le(i), std::max(ls(i), lw.target_scale) + 1e-10);
    }
  }
}
