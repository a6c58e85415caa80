#pragma once

#include <cstdint>
#include <vector>

#include "scope/divergence.hpp"
#include "scope/linalg.hpp"
#include "scope/regression.hpp"
#include "scope/tuning.hpp"

namespace scope {

/// Empirical check that the loss-minimizing radius scales like n^-2.
///
/// The ground truth is V^T diag(1..p) V with V drawn from Rng(seed). For the
/// j-th sample size and r-th repeat the samples come from
/// Rng(seed + 1 + j * repeats + r). Each repeat uses the uncentered sample
/// covariance as nominal and tau = p / ||nominal||_F^2; each radius on the
/// grid is scored by the combined loss against the ground truth (with the
/// true tau*), averaged over repeats, and the best radius per n is regressed
/// on n in log-log scale.
struct RadiusExperimentConfig {
  DivergenceKind kind = DivergenceKind::KullbackLeibler;
  Index p = 5;
  std::vector<Index> sample_sizes;
  int repeats = 20;
  std::vector<double> grid = default_radius_grid();
  std::uint64_t seed = 7;
  std::size_t threads = 1;
};

struct RadiusRow {
  Index n = 0;
  double rho_best = 0.0;
  std::size_t best_index = 0;
  double mean_loss = 0.0;
};

struct RadiusExperimentResult {
  RegressionFit fit;
  std::vector<RadiusRow> rows;
  SymMatrix sigma0;
  double tau_star = 0.0;
};

RadiusExperimentResult radius_scaling_experiment(const RadiusExperimentConfig& config);

/// Combined loss of V diag(s) V^T against sigma0, given the diagonal of
/// V^T sigma0 V.
double combined_loss_spectral(const Vector& shrunk, const Vector& projected_truth,
                              double tau_star);

}  // namespace scope
