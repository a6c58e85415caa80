#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "scope/tuning.hpp"
#include "test_support.hpp"

using namespace scope;

namespace {

SymMatrix diag(std::initializer_list<double> v) {
  Vector d(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) d(i++) = x;
  return SymMatrix::diagonal(d);
}

}  // namespace

TEST(TauStar, Examples) {
  EXPECT_DOUBLE_EQ(tau_star(SymMatrix::identity(4)), 1.0);
  EXPECT_DOUBLE_EQ(tau_star(diag({1, 2, 3})), 3.0 / 14.0);
  EXPECT_NEAR(1 / std::sqrt(tau_star(diag({1, 2, 3}))), 2.160247, 1e-6);
  EXPECT_THROW(tau_star(SymMatrix::zero(2)), ZeroMatrix);
}

TEST(TauStar, ScalingLaw) {
  Rng rng(61);
  const SymMatrix s = fixtures::random_spd(4, rng);
  for (double c : {0.5, 2.0, 10.0}) {
    EXPECT_DOUBLE_EQ(tau_star(SymMatrix(c * s.matrix())), tau_star(s) / (c * c));
  }
}

TEST(RhoStar, Examples) {
  EXPECT_NEAR(rho_star_asymptotic(DivergenceKind::KullbackLeibler, diag({1, 2})), 3.125, 1e-12);
  EXPECT_NEAR(rho_star_asymptotic(DivergenceKind::SymmetrizedStein, diag({1, 2})), 1.5625, 1e-12);
  EXPECT_THROW(rho_star_asymptotic(DivergenceKind::KullbackLeibler, diag({2, 2})), ScalarMatrix);
  EXPECT_THROW(rho_star_asymptotic(DivergenceKind::SquaredFrobenius, diag({1, 2})), Unsupported);
  EXPECT_THROW(rho_star_asymptotic(DivergenceKind::WeightedFrobenius, diag({1, 2})), Unsupported);
  EXPECT_THROW(rho_star_asymptotic(DivergenceKind::KullbackLeibler, diag({0, 2})), SingularMatrix);
}

TEST(RhoStar, WassersteinHandComputed) {
  // p = 2, diag(1, 2): tau* = 0.4, tr(S^-1) = 1.5, tr(S) = 3, ||S||^2 = 5,
  // h = 1.5 - 6/5 = 0.3; sum (1 - 0.4 l^2)^2 / l = 0.36 + 0.18 = 0.54.
  const double expected = 9.0 * 4.0 / (256.0 * 0.09) * 0.54;
  EXPECT_NEAR(rho_star_asymptotic(DivergenceKind::Wasserstein, diag({1, 2})), expected, 1e-12);
}

TEST(RhoStar, KlIsTwiceSymmetrizedStein) {
  Rng rng(62);
  for (int t = 0; t < 20; ++t) {
    const SymMatrix s = fixtures::random_spd(5, rng);
    EXPECT_NEAR(rho_star_asymptotic(DivergenceKind::KullbackLeibler, s) /
                    rho_star_asymptotic(DivergenceKind::SymmetrizedStein, s),
                2.0, 1e-12);
  }
}

TEST(RhoStar, ConjugationInvariant) {
  Rng rng(63);
  for (DivergenceKind k : {DivergenceKind::KullbackLeibler, DivergenceKind::Wasserstein,
                           DivergenceKind::SymmetrizedStein}) {
    const SymMatrix s = fixtures::random_spd(5, rng);
    const Matrix v = random_orthogonal(5, rng);
    const double a = rho_star_asymptotic(k, s);
    EXPECT_NEAR(rho_star_asymptotic(k, sandwich(v, s)), a, 1e-9 * a);
  }
}

TEST(PlugIn, Examples) {
  const TuningResult r = plug_in_radius(DivergenceKind::KullbackLeibler, diag({1, 2}), 100);
  EXPECT_NEAR(r.rho_n, 3.125e-4, 1e-15);
  EXPECT_DOUBLE_EQ(r.tau_star, 0.4);
  EXPECT_EQ(r.effective_rank, 2);
  const TuningResult r2 = plug_in_radius(DivergenceKind::KullbackLeibler, diag({1, 2}), 200);
  EXPECT_NEAR(r2.rho_n, r.rho_n / 4, 1e-18);
  EXPECT_THROW(plug_in_radius(DivergenceKind::SquaredFrobenius, diag({1, 2}), 10), Unsupported);
  EXPECT_THROW(plug_in_radius(DivergenceKind::KullbackLeibler, diag({1, 2}), 0), InvalidInput);
}

TEST(PlugIn, SingularMatrixUsesPositiveEigenvalues) {
  const TuningResult r = plug_in_radius(DivergenceKind::Wasserstein, diag({0, 1, 2}), 10);
  EXPECT_EQ(r.effective_rank, 2);
  EXPECT_GT(r.rho_n, 0.0);
  EXPECT_DOUBLE_EQ(r.tau_star, 3.0 / 5.0);
  EXPECT_THROW(plug_in_radius(DivergenceKind::Wasserstein, diag({0, 0, 2}), 10), Error);
}

TEST(Grid, LogGrid) {
  const std::vector<double> g = default_radius_grid();
  ASSERT_EQ(g.size(), 60u);
  EXPECT_DOUBLE_EQ(g.front(), 1e-5);
  EXPECT_NEAR(g.back(), 2e3, 1e-9);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
  EXPECT_THROW(log_grid(0, 1, 5), InvalidInput);
}

TEST(GridSearch, Examples) {
  const std::vector<double> grid{0.5, 1, 2};
  EXPECT_EQ(grid_search_radius(grid, [](double r) { return (r - 1) * (r - 1); }).rho_best, 1.0);
  EXPECT_EQ(grid_search_radius(grid, [](double r) { return r; }).rho_best, 0.5);
  EXPECT_EQ(grid_search_radius(grid, [](double r) { return -r; }).rho_best, 2.0);
  EXPECT_EQ(grid_search_radius(grid, [](double) { return 1.0; }).rho_best, 0.5);
  const GridSearchResult r = grid_search_radius(grid, [](double r) { return r * r; });
  EXPECT_EQ(r.losses, (std::vector<double>{0.25, 1, 4}));
}

TEST(GridSearch, ThreadsGiveSameAnswer) {
  const std::vector<double> grid = default_radius_grid();
  const auto oracle = [](double r) { return std::pow(std::log(r) - 0.3, 2); };
  const GridSearchResult one = grid_search_radius(grid, oracle, {1});
  const GridSearchResult four = grid_search_radius(grid, oracle, {4});
  EXPECT_EQ(one.best_index, four.best_index);
  EXPECT_EQ(one.losses, four.losses);
}

TEST(GridSearch, Errors) {
  EXPECT_THROW(grid_search_radius(std::vector<double>{}, [](double) { return 0.0; }), InvalidInput);
  EXPECT_THROW(grid_search_radius(std::vector<double>{-1.0}, [](double) { return 0.0; }), InvalidInput);
  try {
    grid_search_radius(std::vector<double>{1.0, 2.0}, [](double r) -> double {
      if (r > 1.5) throw std::runtime_error("boom");
      return r;
    });
    FAIL();
  } catch (const GridSearchError& e) {
    EXPECT_EQ(e.rho(), 2.0);
  }
}
