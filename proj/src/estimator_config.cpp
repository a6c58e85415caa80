#include "scope/estimator_config.hpp"

#include "scope/estimator.hpp"
#include "scope/tuning.hpp"

namespace scope {

EstimatorConfig parse_estimator(std::string_view text) {
  EstimatorConfig cfg;
  if (text == "sample") {
    cfg.type = EstimatorType::Sample;
    return cfg;
  }
  if (text == "lw") {
    cfg.type = EstimatorType::LedoitWolf;
    return cfg;
  }
  const auto dash = text.rfind('-');
  if (dash == std::string_view::npos) {
    throw InvalidInput("unknown estimator '" + std::string(text) +
                       "' (expected sample | lw | <kind>-plugin | <kind>-fixed)");
  }
  cfg.type = EstimatorType::Scope;
  cfg.kind = parse_kind(text.substr(0, dash));
  const std::string_view mode = text.substr(dash + 1);
  if (mode == "plugin") {
    cfg.tuning = TuningMode::PlugIn;
  } else if (mode == "fixed") {
    cfg.tuning = TuningMode::Fixed;
  } else {
    throw InvalidInput("unknown tuning '" + std::string(mode) +
                       "' in estimator (expected plugin | fixed)");
  }
  if (cfg.tuning == TuningMode::PlugIn && !supports_plug_in(cfg.kind)) {
    throw Unsupported("plug-in tuning is not available for the " +
                      std::string(kind_label(cfg.kind)) + " divergence");
  }
  return cfg;
}

std::string estimator_name(const EstimatorConfig& config) {
  switch (config.type) {
    case EstimatorType::Sample: return "sample";
    case EstimatorType::LedoitWolf: return "lw";
    case EstimatorType::Scope:
      return std::string(kind_name(config.kind)) +
             (config.tuning == TuningMode::PlugIn ? "-plugin" : "-fixed");
  }
  return "unknown";
}

SymMatrix estimate_covariance(const EstimatorConfig& config, const SampleMatrix& x) {
  switch (config.type) {
    case EstimatorType::Sample: return sample_covariance(x, config.nominal_mode);
    case EstimatorType::LedoitWolf: return lw_linear(x).estimate;
    case EstimatorType::Scope: break;
  }
  const SymMatrix nominal = sample_covariance(x, config.nominal_mode);
  const double tau = config.tau.value_or(tau_star(nominal));
  double rho = 0.0;
  if (config.tuning == TuningMode::Fixed) {
    if (!config.rho) throw InvalidInput("fixed tuning requires an explicit rho");
    rho = *config.rho;
  } else {
    rho = config.rho.value_or(plug_in_radius(config.kind, nominal, x.n()).rho_n);
  }
  return scope_estimate(nominal, config.kind, tau, rho).sigma_star;
}

CovarianceFn make_covariance_fn(EstimatorConfig config) {
  return [config](const SampleMatrix& x) { return estimate_covariance(config, x); };
}

}  // namespace scope
