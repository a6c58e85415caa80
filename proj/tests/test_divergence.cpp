#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "scope/divergence.hpp"
#include "test_support.hpp"

using namespace scope;

namespace {

const std::vector<double> kGrid{0.1, 0.5, 1.0, 2.0, 10.0};

}  // namespace

TEST(Generator, Examples) {
  EXPECT_NEAR(generator_value(DivergenceKind::KullbackLeibler, 2, 1), 0.5 * (1.0 - std::log(2.0)), 1e-15);
  EXPECT_NEAR(generator_value(DivergenceKind::KullbackLeibler, 2, 1), 0.1534264, 1e-7);
  EXPECT_NEAR(generator_value(DivergenceKind::Wasserstein, 4, 1), 1.0, 1e-15);
  for (DivergenceKind k : kAllDivergences) EXPECT_EQ(generator_value(k, 3.7, 3.7), 0.0);
}

TEST(Generator, DerivativeExamples) {
  EXPECT_EQ(generator_deriv(DivergenceKind::KullbackLeibler, 2, 2), 0.0);
  EXPECT_DOUBLE_EQ(generator_deriv(DivergenceKind::SquaredFrobenius, 3, 1), 4.0);
  EXPECT_DOUBLE_EQ(generator_deriv(DivergenceKind::SymmetrizedStein, 1, 2), -0.75);
}

TEST(Generator, Domains) {
  EXPECT_THROW(generator_value(DivergenceKind::KullbackLeibler, 1, 0), DomainError);
  EXPECT_THROW(generator_value(DivergenceKind::SymmetrizedStein, 0, 1), DomainError);
  EXPECT_THROW(generator_value(DivergenceKind::WeightedFrobenius, 1, 0), DomainError);
  EXPECT_DOUBLE_EQ(generator_value(DivergenceKind::Wasserstein, 1, 0), 1.0);
  EXPECT_DOUBLE_EQ(generator_value(DivergenceKind::SquaredFrobenius, 0, 2), 4.0);
  EXPECT_DOUBLE_EQ(generator_value(DivergenceKind::WeightedFrobenius, 0, 2), 2.0);
  EXPECT_FALSE(evaluate_generator(DivergenceKind::KullbackLeibler, -1, 1).defined);
  try {
    generator_value(DivergenceKind::KullbackLeibler, 1, 0);
  } catch (const DomainError& e) {
    EXPECT_EQ(e.kind(), DivergenceKind::KullbackLeibler);
    EXPECT_EQ(e.b(), 0.0);
  }
}

TEST(Generator, Names) {
  for (DivergenceKind k : kAllDivergences) EXPECT_EQ(parse_kind(kind_name(k)), k);
  EXPECT_THROW(parse_kind("euclid"), InvalidInput);
}

TEST(GeneratorProperty, Convexity) {
  Rng rng(21);
  for (DivergenceKind k : kAllDivergences) {
    for (int t = 0; t < 2000; ++t) {
      const double b = fixtures::uniform(rng, 0.05, 20);
      const double a1 = fixtures::uniform(rng, 0.05, 20);
      const double a2 = fixtures::uniform(rng, 0.05, 20);
      const double th = rng.uniform();
      const double lhs = generator_value(k, th * a1 + (1 - th) * a2, b);
      const double rhs = th * generator_value(k, a1, b) + (1 - th) * generator_value(k, a2, b);
      ASSERT_LE(lhs, rhs + 1e-10) << kind_name(k);
    }
  }
}

TEST(GeneratorProperty, MonotoneAwayFromB) {
  Rng rng(22);
  for (DivergenceKind k : kAllDivergences) {
    for (int t = 0; t < 2000; ++t) {
      const double b = fixtures::uniform(rng, 0.1, 10);
      double a1 = fixtures::uniform(rng, 0.01, b);
      double a2 = fixtures::uniform(rng, 0.01, b);
      if (a1 > a2) std::swap(a1, a2);
      if (a1 < a2) ASSERT_GT(generator_value(k, a1, b), generator_value(k, a2, b)) << kind_name(k);
      a1 = fixtures::uniform(rng, b, 10 * b);
      a2 = fixtures::uniform(rng, b, 10 * b);
      if (a1 < a2) std::swap(a1, a2);
      if (a1 > a2) ASSERT_GT(generator_value(k, a1, b), generator_value(k, a2, b)) << kind_name(k);
    }
  }
}

TEST(GeneratorProperty, DerivativeMatchesFiniteDifference) {
  const double h = 1e-6;
  for (DivergenceKind k : kAllDivergences) {
    for (double a : kGrid) {
      for (double b : kGrid) {
        const double fd = (generator_value(k, a + h, b) - generator_value(k, a - h, b)) / (2 * h);
        const double d = generator_deriv(k, a, b);
        EXPECT_NEAR(d, fd, 1e-5 * std::max(1.0, std::abs(d))) << kind_name(k) << " a=" << a << " b=" << b;
      }
    }
  }
}

TEST(GeneratorProperty, LocalQuadraticLimit) {
  for (double b : kGrid) {
    const std::vector<std::pair<DivergenceKind, double>> cases{
        {DivergenceKind::KullbackLeibler, 1 / (4 * b * b)},
        {DivergenceKind::Wasserstein, 1 / (4 * b)},
        {DivergenceKind::SymmetrizedStein, 1 / (2 * b * b)}};
    for (const auto& [k, c] : cases) {
      for (double sign : {-1.0, 1.0}) {
        const double a = b * (1 + sign * 1e-4);
        EXPECT_NEAR(generator_value(k, a, b) / ((a - b) * (a - b)), c, 1e-3 * c) << kind_name(k);
      }
    }
  }
}

TEST(MatrixDivergence, Examples) {
  EXPECT_NEAR(matrix_divergence(DivergenceKind::KullbackLeibler, SymMatrix::diagonal(Vector::Constant(1, 2)),
                                SymMatrix::identity(1)),
              0.1534264, 1e-7);
  Rng rng(23);
  const SymMatrix a = fixtures::random_spd(5, rng);
  for (DivergenceKind k : kAllDivergences) EXPECT_NEAR(matrix_divergence(k, a, a), 0.0, 1e-10);
}

TEST(MatrixDivergence, DiagonalIsSumOfGenerators) {
  Rng rng(24);
  for (DivergenceKind k : kAllDivergences) {
    for (int t = 0; t < 20; ++t) {
      const Vector x = fixtures::random_spectrum(4, rng, 0.1, 10);
      const Vector y = fixtures::random_spectrum(4, rng, 0.1, 10);
      double expected = 0.0;
      for (Index i = 0; i < 4; ++i) expected += generator_value(k, x(i), y(i));
      EXPECT_NEAR(matrix_divergence(k, SymMatrix::diagonal(x), SymMatrix::diagonal(y)), expected,
                  1e-10 * std::max(1.0, expected))
          << kind_name(k);
    }
  }
}

TEST(MatrixDivergence, OrthogonalInvariance) {
  Rng rng(25);
  for (DivergenceKind k : kAllDivergences) {
    for (int t = 0; t < 20; ++t) {
      const SymMatrix x = fixtures::random_spd(5, rng);
      const SymMatrix y = fixtures::random_spd(5, rng);
      const Matrix v = random_orthogonal(5, rng);
      const double d = matrix_divergence(k, x, y);
      const double dv = matrix_divergence(k, sandwich(v, x), sandwich(v, y));
      EXPECT_NEAR(dv, d, 1e-8 * std::max(1.0, d)) << kind_name(k);
    }
  }
}

TEST(MatrixDivergence, SingularArguments) {
  const SymMatrix sing = SymMatrix::diagonal(Vector::LinSpaced(2, 0, 1));
  const SymMatrix eye = SymMatrix::identity(2);
  EXPECT_NEAR(matrix_divergence(DivergenceKind::Wasserstein, eye, sing), 1.0, 1e-12);
  EXPECT_THROW(matrix_divergence(DivergenceKind::KullbackLeibler, eye, sing), DomainError);
  EXPECT_THROW(matrix_divergence(DivergenceKind::WeightedFrobenius, eye, sing), DomainError);
}

TEST(DomainCheck, Examples) {
  const SymMatrix sing = SymMatrix::diagonal(Vector::LinSpaced(2, 1, 0));
  EXPECT_FALSE(domain_check(DivergenceKind::KullbackLeibler, sing));
  EXPECT_TRUE(domain_check(DivergenceKind::Wasserstein, sing));
  for (DivergenceKind k : kAllDivergences) EXPECT_TRUE(domain_check(k, SymMatrix::identity(3)));
}
