#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scope/estimator_config.hpp"
#include "scope/synthetic.hpp"

namespace scope {

/// One historical experiment with a known preference B over A.
struct AbExperiment {
  SampleMatrix a;
  SampleMatrix b;
};

struct AbWeights {
  Vector weights;
  /// Experiments dropped because their direction vector was zero.
  std::size_t skipped = 0;
};

/// w = mean over experiments of w_k / ||w_k||, where
/// w_k = (f(A_k) + f(B_k))^-1 (mean(B_k) - mean(A_k)) and f = cov_fn.
/// Throws SingularMatrix when f(A_k) + f(B_k) is singular and InvalidInput
/// when every w_k vanishes.
AbWeights ab_learn_weights(const std::vector<AbExperiment>& experiments, const CovarianceFn& cov_fn);

/// w^T (mean(Y) - mean(A)) / sqrt(w^T S_A w + w^T S_Y w) with centered sample
/// covariances. Throws DegenerateVariance when the denominator is zero.
double ab_zscore(const Vector& w, const SampleMatrix& a, const SampleMatrix& y);

/// Synthetic benchmark. Per run the hidden parameters are mu = xi and
/// S1 = sum_{i<=100} xi_i xi_i^T, S2 = sum_{100<i<=200} xi_i xi_i^T with all
/// xi standard normal in R^p. Training pairs draw n samples of N(0, S1) for A
/// and N(mu, S2) for B; the first round(recognizable * test_pairs) test pairs
/// are A/B (label 1), the rest A/A (label 0), each group of `test_group_size`.
/// Run r uses Rng(seed + r); every estimator sees the same data.
struct AbSimulationConfig {
  Index p = 50;
  Index n = 100;
  int train_pairs = 100;
  int test_pairs = 200;
  double recognizable = 0.6;
  Index test_group_size = 200;
  int repeats = 20;
  std::uint64_t seed = 7;
  std::vector<EstimatorConfig> estimators;
  std::size_t threads = 1;
};

struct AbEstimatorSummary {
  std::string name;
  std::vector<double> aucs;
  double mean_auc = 0.0;
  /// Sample variance (n - 1 denominator); 0 for a single run.
  double var_auc = 0.0;
};

struct AbSimulationResult {
  std::vector<AbEstimatorSummary> estimators;
  std::size_t skipped_experiments = 0;
};

AbSimulationResult run_ab_simulation(const AbSimulationConfig& config);

}  // namespace scope
