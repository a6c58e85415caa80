#include "scope/abtest.hpp"

#include <cmath>

#include "scope/detection.hpp"
#include "scope/error.hpp"
#include "scope/parallel.hpp"

namespace scope {

AbWeights ab_learn_weights(const std::vector<AbExperiment>& experiments, const CovarianceFn& cov_fn) {
  if (experiments.empty()) throw InvalidInput("ab_learn_weights: no experiments");
  const Index p = experiments.front().a.p();
  AbWeights out{Vector::Zero(p), 0};
  std::size_t used = 0;
  for (const AbExperiment& ex : experiments) {
    if (ex.a.p() != p || ex.b.p() != p) throw InvalidInput("ab_learn_weights: dimension mismatch");
    if (ex.a.n() < 2 || ex.b.n() < 2) {
      throw InvalidInput("ab_learn_weights: every group needs at least 2 samples");
    }
    const SymMatrix pooled(cov_fn(ex.a).matrix() + cov_fn(ex.b).matrix());
    const Vector delta = ex.b.mean() - ex.a.mean();
    const Vector wk = invert_spd(pooled).matrix() * delta;
    const double norm = wk.norm();
    if (!(norm > 0.0)) {
      ++out.skipped;
      continue;
    }
    out.weights += wk / norm;
    ++used;
  }
  if (used == 0) throw InvalidInput("ab_learn_weights: all experiment weights are zero");
  out.weights /= static_cast<double>(experiments.size() - out.skipped);
  return out;
}

double ab_zscore(const Vector& w, const SampleMatrix& a, const SampleMatrix& y) {
  if (w.size() != a.p() || a.p() != y.p()) throw InvalidInput("ab_zscore: dimension mismatch");
  const SymMatrix sa = sample_covariance(a, CovarianceMode::Centered);
  const SymMatrix sy = sample_covariance(y, CovarianceMode::Centered);
  const double var = w.dot(sa.matrix() * w) + w.dot(sy.matrix() * w);
  if (!(var > 0.0)) throw DegenerateVariance("ab_zscore: both groups have zero variance along w");
  return w.dot(y.mean() - a.mean()) / std::sqrt(var);
}

namespace {

SampleMatrix draw_group(const Matrix& factor, const Vector& mu, Index n, Rng& rng) {
  Matrix z(n, factor.cols());
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < z.cols(); ++j) z(i, j) = rng.normal();
  }
  Matrix x = z * factor.transpose();
  x.rowwise() += mu.transpose();
  return SampleMatrix(std::move(x));
}

Matrix gaussian_rows(Index rows, Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

}  // namespace

AbSimulationResult run_ab_simulation(const AbSimulationConfig& config) {
  if (config.p < 1) throw InvalidInput("run_ab_simulation: p must be positive");
  if (config.n < 2 || config.test_group_size < 2) {
    throw InvalidInput("run_ab_simulation: groups need at least 2 samples");
  }
  if (config.train_pairs < 1 || config.test_pairs < 2 || config.repeats < 1) {
    throw InvalidInput("run_ab_simulation: pair and repeat counts must be positive");
  }
  if (!(config.recognizable > 0.0 && config.recognizable < 1.0)) {
    throw InvalidInput("run_ab_simulation: recognizable fraction must lie in (0, 1)");
  }
  if (config.estimators.empty()) throw InvalidInput("run_ab_simulation: no estimators");

  const int n_recognizable =
      static_cast<int>(std::lround(config.recognizable * config.test_pairs));
  if (n_recognizable < 1 || n_recognizable >= config.test_pairs) {
    throw InvalidInput("run_ab_simulation: test set must contain both A/B and A/A pairs");
  }

  const std::size_t n_est = config.estimators.size();
  const auto repeats = static_cast<std::size_t>(config.repeats);
  std::vector<std::vector<double>> aucs(n_est, std::vector<double>(repeats));
  std::vector<std::size_t> skipped(repeats * n_est, 0);

  parallel_for(repeats, config.threads, [&](std::size_t r) {
    Rng rng(config.seed + r);
    const Index p = config.p;
    const Vector mu = gaussian_rows(p, 1, rng).col(0);
    // Rows of g1 (g2) are xi_1..xi_100 (xi_101..xi_200); S = g^T g and
    // g^T z is an exact N(0, S) draw for z ~ N(0, I_100).
    const Matrix g1 = gaussian_rows(100, p, rng);
    const Matrix g2 = gaussian_rows(100, p, rng);
    const Matrix f1 = g1.transpose();
    const Matrix f2 = g2.transpose();
    const Vector zero = Vector::Zero(p);

    std::vector<AbExperiment> train;
    train.reserve(static_cast<std::size_t>(config.train_pairs));
    for (int k = 0; k < config.train_pairs; ++k) {
      SampleMatrix a = draw_group(f1, zero, config.n, rng);
      SampleMatrix b = draw_group(f2, mu, config.n, rng);
      train.push_back({std::move(a), std::move(b)});
    }
    std::vector<SampleMatrix> test_a;
    std::vector<SampleMatrix> test_y;
    std::vector<int> labels;
    for (int k = 0; k < config.test_pairs; ++k) {
      const int label = k < n_recognizable ? 1 : 0;
      test_a.push_back(draw_group(f1, zero, config.test_group_size, rng));
      test_y.push_back(label == 1 ? draw_group(f2, mu, config.test_group_size, rng)
                                  : draw_group(f1, zero, config.test_group_size, rng));
      labels.push_back(label);
    }

    for (std::size_t e = 0; e < n_est; ++e) {
      const AbWeights w = ab_learn_weights(train, make_covariance_fn(config.estimators[e]));
      skipped[r * n_est + e] = w.skipped;
      std::vector<double> scores;
      scores.reserve(labels.size());
      for (std::size_t k = 0; k < labels.size(); ++k) {
        scores.push_back(ab_zscore(w.weights, test_a[k], test_y[k]));
      }
      aucs[e][r] = auc(scores, labels);
    }
  });

  AbSimulationResult out;
  for (std::size_t s : skipped) out.skipped_experiments += s;
  for (std::size_t e = 0; e < n_est; ++e) {
    AbEstimatorSummary summary;
    summary.name = estimator_name(config.estimators[e]);
    summary.aucs = aucs[e];
    double mean = 0.0;
    for (double v : summary.aucs) mean += v;
    mean /= static_cast<double>(repeats);
    double ss = 0.0;
    for (double v : summary.aucs) ss += (v - mean) * (v - mean);
    summary.mean_auc = mean;
    summary.var_auc = repeats > 1 ? ss / static_cast<double>(repeats - 1) : 0.0;
    out.estimators.push_back(std::move(summary));
  }
  return out;
}

}  // namespace scope
