#include "scope/radius_experiment.hpp"

#include <cmath>

#include "scope/estimator.hpp"
#include "scope/parallel.hpp"
#include "scope/shrinkage.hpp"
#include "scope/synthetic.hpp"

namespace scope {

namespace {

struct Replicate {
  Vector spectrum;   // nominal eigenvalues, ascending, clipped at 0
  Vector projected;  // diag(V^T sigma0 V)
  double tau = 0.0;
};

Replicate make_replicate(const SymMatrix& sigma0, Index n, std::uint64_t seed) {
  Rng rng(seed);
  const SampleMatrix x = sample_mvn(sigma0, n, rng);
  const SymMatrix nominal = sample_covariance(x, CovarianceMode::Uncentered);
  const SpectralDecomposition sd = spectral_decompose(nominal);
  Replicate rep;
  rep.spectrum = sd.eigenvalues.cwiseMax(0.0);
  rep.projected = (sd.basis.transpose() * sigma0.matrix() * sd.basis).diagonal();
  rep.tau = tau_star(nominal);
  return rep;
}

}  // namespace

double combined_loss_spectral(const Vector& shrunk, const Vector& projected_truth,
                              double tau_star) {
  const Eigen::ArrayXd s = shrunk.array();
  const Eigen::ArrayXd q = projected_truth.array();
  const double stein = s.log().sum() + (q / s).sum();
  const double frob = s.square().sum() - 2.0 * (s * q).sum();
  return stein + 0.5 * tau_star * frob;
}

RadiusExperimentResult radius_scaling_experiment(const RadiusExperimentConfig& config) {
  if (config.p < 2) throw InvalidInput("radius_scaling_experiment: p must be >= 2");
  if (config.repeats < 1) throw InvalidInput("radius_scaling_experiment: repeats must be >= 1");
  if (config.sample_sizes.size() < 3) {
    throw InvalidInput("radius_scaling_experiment: need at least 3 sample sizes");
  }
  for (Index n : config.sample_sizes) {
    if (n < 2) throw InvalidInput("radius_scaling_experiment: sample sizes must be >= 2");
  }
  if (config.grid.empty()) throw InvalidInput("radius_scaling_experiment: empty grid");

  Rng truth_rng(config.seed);
  RadiusExperimentResult out{{}, {}, make_ground_truth(config.p, truth_rng), 0.0};
  out.tau_star = tau_star(out.sigma0);

  const auto repeats = static_cast<std::size_t>(config.repeats);
  std::vector<RadiusPoint> points;
  for (std::size_t j = 0; j < config.sample_sizes.size(); ++j) {
    const Index n = config.sample_sizes[j];
    std::vector<Replicate> reps(repeats);
    parallel_for(repeats, config.threads, [&](std::size_t r) {
      reps[r] = make_replicate(out.sigma0, n, config.seed + 1 + j * repeats + r);
    });

    const auto oracle = [&](double rho) {
      double total = 0.0;
      for (const Replicate& rep : reps) {
        const DualSolution dual = solve_dual({config.kind, rep.tau, rho, rep.spectrum});
        total += combined_loss_spectral(dual.shrunk_spectrum, rep.projected, out.tau_star);
      }
      return total / static_cast<double>(reps.size());
    };
    const GridSearchResult search =
        grid_search_radius(config.grid, oracle, GridSearchOptions{config.threads});

    out.rows.push_back({n, search.rho_best, search.best_index,
                        search.losses[search.best_index]});
    points.push_back({static_cast<double>(n), search.rho_best});
  }
  out.fit = loglog_regress(points);
  return out;
}

}  // namespace scope
