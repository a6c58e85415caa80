#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "scope/divergence.hpp"
#include "scope/synthetic.hpp"

namespace scope {

enum class EstimatorType { Sample, LedoitWolf, Scope };

enum class TuningMode {
  Fixed,   ///< explicit tau and rho
  PlugIn,  ///< tau* and rho*/n^2 from the nominal itself
};

/// Which covariance estimator the application harnesses use.
///
/// Text form: "sample", "lw", "<kind>-plugin" or "<kind>-fixed", where kind is
/// a divergence name (e.g. "sstein-plugin"). Fixed tuning needs rho; tau
/// defaults to p / ||nominal||_F^2 when absent.
struct EstimatorConfig {
  EstimatorType type = EstimatorType::Sample;
  DivergenceKind kind = DivergenceKind::KullbackLeibler;
  TuningMode tuning = TuningMode::PlugIn;
  std::optional<double> tau;
  std::optional<double> rho;
  CovarianceMode nominal_mode = CovarianceMode::Centered;
};

EstimatorConfig parse_estimator(std::string_view text);
std::string estimator_name(const EstimatorConfig& config);

SymMatrix estimate_covariance(const EstimatorConfig& config, const SampleMatrix& x);

using CovarianceFn = std::function<SymMatrix(const SampleMatrix&)>;

CovarianceFn make_covariance_fn(EstimatorConfig config);

}  // namespace scope
