#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scope/abtest.hpp"
#include "scope/detection.hpp"
#include "scope/error.hpp"
#include "scope/estimator.hpp"
#include "scope/estimator_config.hpp"
#include "scope/io.hpp"
#include "scope/portfolio.hpp"
#include "scope/radius_experiment.hpp"
#include "scope/shrinkage.hpp"
#include "scope/tuning.hpp"

#ifndef SCOPE_VERSION
#define SCOPE_VERSION "0.0.0"
#endif

namespace scope::cli {

namespace {

using io::json;

struct GlobalOptions {
  std::uint64_t seed = 7;
  std::size_t threads = 1;
  std::string output;
};

struct EstimateOptions {
  std::string input;
  std::string kind = "kl";
  std::optional<double> tau;
  std::optional<double> rho;
  std::string tuning;  // empty: fixed when --rho is given, plugin otherwise
  bool matrix = false;
  std::optional<Index> n;
  std::string covariance = "uncentered";
};

struct TuneOptions {
  std::string input;
  std::string kind = "kl";
  bool matrix = false;
  std::optional<Index> n;
  std::string covariance = "uncentered";
};

struct RadiusOptions {
  std::string kind = "kl";
  Index p = 5;
  std::string n = "10:150:10";
  int repeats = 20;
  double grid_lo = 1e-5;
  double grid_hi = 2e3;
  std::size_t grid_points = 60;
  std::string csv;
};

struct RxOptions {
  std::string input;
  std::string estimator = "sample";
  std::string csv;
};

struct AbOptions {
  Index p = 50;
  Index n = 100;
  int train_pairs = 100;
  int test_pairs = 200;
  double recognizable = 0.6;
  Index group_size = 200;
  int repeats = 20;
  std::vector<std::string> estimators{"sample", "lw", "kl-plugin", "wasserstein-plugin",
                                      "sstein-plugin"};
};

struct PortfolioOptions {
  std::string input;
  Index window = 60;
  std::string estimator = "sample";
  std::string csv;
};

std::string version_text() {
  std::ostringstream os;
  os << "scope " << SCOPE_VERSION << "\n"
     << "tolerances:\n"
     << "  dual residual       " << ShrinkageTolerances::dual << " * max(1, rho)\n"
     << "  eigenvalue mapping  " << ShrinkageTolerances::phi << " (relative)\n"
     << "  mapping bisection   " << ShrinkageTolerances::phi_max_iterations << " iterations\n"
     << "  dual bisection      " << ShrinkageTolerances::dual_max_iterations << " iterations\n"
     << "  bound doublings     " << ShrinkageTolerances::max_doublings << "\n"
     << "  scalar spread       " << ShrinkageTolerances::scalar_spread << "\n"
     << "  invertibility       " << kInvertibilityThreshold << "\n"
     << "  singular nominal    " << kSingularityThreshold << "\n";
  const PortfolioTolerances pt;
  os << "  portfolio move      " << pt.move << "\n"
     << "  portfolio iters     " << pt.max_iterations << "\n"
     << "  portfolio KKT       " << pt.kkt << " * max(1, |mu|)";
  return os.str();
}

CovarianceMode parse_mode(const std::string& s) {
  if (s == "centered") return CovarianceMode::Centered;
  if (s == "uncentered") return CovarianceMode::Uncentered;
  throw InvalidInput("unknown covariance mode '" + s + "' (expected centered | uncentered)");
}

std::vector<Index> parse_sample_sizes(const std::string& text) {
  std::vector<Index> out;
  const auto to_index = [&](const std::string& s) -> Index {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw InvalidInput("bad sample size '" + s + "' in --n");
    return static_cast<Index>(v);
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw InvalidInput("--n range must be start:stop:step");
    const Index lo = to_index(parts[0]);
    const Index hi = to_index(parts[1]);
    const Index step = to_index(parts[2]);
    if (step <= 0 || hi < lo) throw InvalidInput("--n range must have step > 0 and stop >= start");
    for (Index v = lo; v <= hi; v += step) out.push_back(v);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(to_index(part));
  }
  return out;
}

void emit(const GlobalOptions& g, const std::string& text, std::ostream& out) {
  if (g.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.output, std::ios::binary);
  if (!file) throw InvalidInput("cannot write '" + g.output + "'");
  file << text;
}

void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidInput("cannot write '" + path + "'");
  io::write_csv(file, header, rows);
}

json global_json(const GlobalOptions& g) {
  return {{"seed", g.seed}, {"threads", g.threads}};
}

json optional_json(const std::optional<double>& v) {
  return v ? io::number(*v) : json(nullptr);
}

// Rows shuffled with the seed, split in two halves for the grid tuning mode.
std::pair<SampleMatrix, SampleMatrix> split_halves(const SampleMatrix& x, std::uint64_t seed) {
  std::vector<Index> order(static_cast<std::size_t>(x.n()));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.next_u64() % i);
    std::swap(order[i - 1], order[j]);
  }
  const Index half = x.n() / 2;
  Matrix a(half, x.p());
  Matrix b(x.n() - half, x.p());
  for (Index i = 0; i < half; ++i) a.row(i) = x.rows().row(order[static_cast<std::size_t>(i)]);
  for (Index i = half; i < x.n(); ++i) {
    b.row(i - half) = x.rows().row(order[static_cast<std::size_t>(i)]);
  }
  return {SampleMatrix(std::move(a)), SampleMatrix(std::move(b))};
}

struct GridTuning {
  double rho_half = 0.0;
  double rho = 0.0;
  std::vector<double> grid;
  std::vector<double> losses;
};

// Two-fold validation: each half is the nominal for the other half's second
// moment, scored by the combined loss. The winning radius is rescaled from
// half-size to full-size samples under the n^-2 order.
GridTuning grid_tune(DivergenceKind kind, const SampleMatrix& x, CovarianceMode mode,
                     std::optional<double> tau, const GlobalOptions& g) {
  if (x.n() < 4) throw InvalidInput("grid tuning needs at least 4 samples");
  const auto [first, second] = split_halves(x, g.seed);
  struct Fold {
    SpectralDecomposition nominal;
    double tau = 0.0;
    SymMatrix target;
    double target_tau = 0.0;
  };
  std::vector<Fold> folds;
  for (int f = 0; f < 2; ++f) {
    const SampleMatrix& train = f == 0 ? first : second;
    const SampleMatrix& test = f == 0 ? second : first;
    const SymMatrix nominal = sample_covariance(train, mode);
    const SymMatrix target = sample_covariance(test, mode);
    folds.push_back({spectral_decompose(nominal), tau.value_or(tau_star(nominal)), target,
                     tau_star(target)});
  }
  GridTuning out;
  out.grid = default_radius_grid();
  // Surface domain errors with their own type before the search wraps them.
  for (const Fold& fold : folds) scope_estimate(fold.nominal, kind, fold.tau, out.grid.back());

  const auto oracle = [&](double rho) {
    double total = 0.0;
    for (const Fold& fold : folds) {
      const ScopeEstimate e = scope_estimate(fold.nominal, kind, fold.tau, rho);
      total += combined_loss(e.sigma_star, fold.target, fold.target_tau);
    }
    return total;
  };
  const GridSearchResult search = grid_search_radius(out.grid, oracle, {g.threads});
  const double ratio = static_cast<double>(first.n()) / static_cast<double>(x.n());
  out.rho_half = search.rho_best;
  out.rho = search.rho_best * ratio * ratio;
  out.losses = search.losses;
  return out;
}

std::string cmd_estimate(const EstimateOptions& o, const GlobalOptions& g) {
  const DivergenceKind kind = parse_kind(o.kind);
  const CovarianceMode mode = parse_mode(o.covariance);
  std::string tuning = o.tuning.empty() ? (o.rho ? "fixed" : "plugin") : o.tuning;
  if (tuning != "fixed" && tuning != "plugin" && tuning != "grid") {
    throw InvalidInput("unknown tuning mode '" + tuning + "' (expected fixed | plugin | grid)");
  }
  if (tuning == "fixed" && (!o.tau || !o.rho)) {
    throw InvalidInput("fixed tuning requires both --tau and --rho");
  }
  if (tuning == "plugin") {
    if (!supports_plug_in(kind)) {
      throw Unsupported("plug-in tuning is not available for the " +
                        std::string(kind_label(kind)) + " divergence");
    }
    if (o.tau || o.rho) throw InvalidInput("--tau/--rho cannot be combined with plugin tuning");
  }
  if (tuning == "grid") {
    if (o.rho) throw InvalidInput("--rho cannot be combined with grid tuning");
    if (o.matrix) throw InvalidInput("grid tuning needs a sample file, not --matrix");
  }
  if (o.matrix && tuning == "plugin" && !o.n) {
    throw InvalidInput("plugin tuning on a --matrix input needs the sample size --n");
  }

  std::optional<SampleMatrix> samples;
  std::optional<SymMatrix> nominal;
  if (o.matrix) {
    nominal = io::read_symmetric_matrix(o.input);
  } else {
    samples = io::read_samples(o.input);
    nominal = sample_covariance(*samples, mode);
  }
  const Index n = o.n.value_or(samples ? samples->n() : 0);

  json config = global_json(g);
  config.update({{"command", "estimate"},
                 {"input", o.input},
                 {"input_kind", o.matrix ? "matrix" : "samples"},
                 {"kind", std::string(kind_name(kind))},
                 {"tuning", tuning},
                 {"tau", optional_json(o.tau)},
                 {"rho", optional_json(o.rho)},
                 {"n", n},
                 {"covariance", o.covariance}});

  json report;
  double tau = 0.0;
  double rho = 0.0;
  if (tuning == "fixed") {
    tau = *o.tau;
    rho = *o.rho;
  } else if (tuning == "plugin") {
    const TuningResult t = plug_in_radius(kind, *nominal, n);
    tau = t.tau_star;
    rho = t.rho_n;
    report["tuning"] = io::to_json(t);
  } else {
    const GridTuning gt = grid_tune(kind, *samples, mode, o.tau, g);
    tau = o.tau.value_or(tau_star(*nominal));
    rho = gt.rho;
    report["tuning"] = {{"rho_half_sample", io::number(gt.rho_half)},
                        {"rho_n", io::number(gt.rho)},
                        {"tau", io::number(tau)},
                        {"grid", io::vector_json(gt.grid)},
                        {"losses", io::vector_json(gt.losses)}};
  }
  report["config"] = config;
  report["estimate"] = io::to_json(scope_estimate(*nominal, kind, tau, rho));
  return io::dump(report);
}

std::string cmd_tune(const TuneOptions& o, const GlobalOptions& g) {
  const DivergenceKind kind = parse_kind(o.kind);
  if (!supports_plug_in(kind)) {
    throw Unsupported("plug-in tuning is not available for the " + std::string(kind_label(kind)) +
                      " divergence");
  }
  const CovarianceMode mode = parse_mode(o.covariance);
  if (o.matrix && !o.n) throw InvalidInput("--matrix input needs the sample size --n");
  std::optional<SymMatrix> nominal;
  Index n = 0;
  if (o.matrix) {
    nominal = io::read_symmetric_matrix(o.input);
    n = *o.n;
  } else {
    const SampleMatrix x = io::read_samples(o.input);
    nominal = sample_covariance(x, mode);
    n = o.n.value_or(x.n());
  }
  json config = global_json(g);
  config.update({{"command", "tune"},
                 {"input", o.input},
                 {"input_kind", o.matrix ? "matrix" : "samples"},
                 {"kind", std::string(kind_name(kind))},
                 {"n", n},
                 {"covariance", o.covariance}});
  json report;
  report["config"] = config;
  report["tuning"] = io::to_json(plug_in_radius(kind, *nominal, n));
  return io::dump(report);
}

std::string cmd_radius(const RadiusOptions& o, const GlobalOptions& g) {
  RadiusExperimentConfig cfg;
  cfg.kind = parse_kind(o.kind);
  if (!supports_plug_in(cfg.kind)) {
    throw Unsupported("the radius experiment covers kl, wasserstein and sstein only");
  }
  cfg.p = o.p;
  cfg.sample_sizes = parse_sample_sizes(o.n);
  cfg.repeats = o.repeats;
  if (!(o.grid_lo > 0.0 && o.grid_hi > o.grid_lo) || o.grid_points < 2) {
    throw InvalidInput("radius grid needs 0 < lo < hi and at least 2 points");
  }
  cfg.grid = log_grid(o.grid_lo, o.grid_hi, o.grid_points);
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  const RadiusExperimentResult result = radius_scaling_experiment(cfg);

  if (!o.csv.empty()) {
    std::vector<std::vector<double>> rows;
    for (const RadiusRow& r : result.rows) {
      const double n = static_cast<double>(r.n);
      rows.push_back({n, std::log(n), r.rho_best, std::log(r.rho_best), r.mean_loss});
    }
    write_csv_file(o.csv, {"n", "log_n", "rho_best", "log_rho_best", "mean_loss"}, rows);
  }

  json config = global_json(g);
  std::vector<Index> sizes = cfg.sample_sizes;
  config.update({{"command", "radius-sim"},
                 {"kind", std::string(kind_name(cfg.kind))},
                 {"p", cfg.p},
                 {"n", sizes},
                 {"repeats", cfg.repeats},
                 {"grid_lo", io::number(o.grid_lo)},
                 {"grid_hi", io::number(o.grid_hi)},
                 {"grid_points", o.grid_points}});
  json report = io::to_json(result);
  report["config"] = config;
  return io::dump(report);
}

std::string cmd_rx(const RxOptions& o, const GlobalOptions& g) {
  const EstimatorConfig est = parse_estimator(o.estimator);
  const io::LabeledSamples data = io::read_labeled_samples(o.input);
  const std::vector<double> scores = rx_global(data.samples, make_covariance_fn(est));
  const double area = auc(scores, data.labels);
  if (!o.csv.empty()) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      rows.push_back({scores[i], static_cast<double>(data.labels[i])});
    }
    write_csv_file(o.csv, {"score", "label"}, rows);
  }
  json config = global_json(g);
  config.update({{"command", "rx"}, {"input", o.input}, {"estimator", estimator_name(est)}});
  json report;
  report["config"] = config;
  report["n"] = data.samples.n();
  report["p"] = data.samples.p();
  report["auc"] = io::number(area);
  report["scores"] = io::vector_json(scores);
  return io::dump(report);
}

std::string cmd_abtest(const AbOptions& o, const GlobalOptions& g, std::ostream& err) {
  AbSimulationConfig cfg;
  cfg.p = o.p;
  cfg.n = o.n;
  cfg.train_pairs = o.train_pairs;
  cfg.test_pairs = o.test_pairs;
  cfg.recognizable = o.recognizable;
  cfg.test_group_size = o.group_size;
  cfg.repeats = o.repeats;
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  for (const std::string& e : o.estimators) cfg.estimators.push_back(parse_estimator(e));
  const AbSimulationResult result = run_ab_simulation(cfg);
  if (result.skipped_experiments > 0) {
    err << "warning: " << result.skipped_experiments
        << " training experiments had a zero weight vector and were skipped\n";
  }
  std::vector<std::string> names;
  for (const EstimatorConfig& e : cfg.estimators) names.push_back(estimator_name(e));
  json config = global_json(g);
  config.update({{"command", "abtest"},
                 {"p", cfg.p},
                 {"n", cfg.n},
                 {"train_pairs", cfg.train_pairs},
                 {"test_pairs", cfg.test_pairs},
                 {"recognizable", io::number(cfg.recognizable)},
                 {"group_size", cfg.test_group_size},
                 {"repeats", cfg.repeats},
                 {"estimators", names}});
  json report = io::to_json(result);
  report["config"] = config;
  return io::dump(report);
}

std::string cmd_portfolio(const PortfolioOptions& o, const GlobalOptions& g) {
  const EstimatorConfig est = parse_estimator(o.estimator);
  const io::ReturnsTable data = io::read_returns(o.input);
  const BacktestReport bt =
      rolling_backtest(data.returns, o.window, make_covariance_fn(est), estimator_name(est));
  if (!o.csv.empty()) {
    std::vector<std::string> header{"period", "return"};
    for (const std::string& a : data.assets) header.push_back("w_" + a);
    std::vector<std::vector<double>> rows;
    for (std::size_t t = 0; t < bt.monthly_returns.size(); ++t) {
      std::vector<double> row{static_cast<double>(static_cast<std::size_t>(o.window) + t),
                              bt.monthly_returns[t]};
      for (Index i = 0; i < bt.weights_history[t].size(); ++i) row.push_back(bt.weights_history[t](i));
      rows.push_back(std::move(row));
    }
    write_csv_file(o.csv, header, rows);
  }
  json config = global_json(g);
  config.update({{"command", "portfolio"},
                 {"input", o.input},
                 {"window", o.window},
                 {"estimator", estimator_name(est)}});
  json report = io::to_json(bt);
  report["assets"] = data.assets;
  report["config"] = config;
  return io::dump(report);
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    fn();
    return kOk;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << " (domain of " << kind_label(e.kind()) << ": "
        << domain_description(e.kind()) << ")\n";
    return kDomainError;
  } catch (const SingularMatrix& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const ScalarMatrix& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const ZeroMatrix& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const DegenerateVariance& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributionally robust covariance and precision estimation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML file with defaults; flags take precedence");
  app.set_version_flag("--version", version_text);

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")
      ->check(CLI::Range(std::size_t{1}, std::size_t{256}))
      ->capture_default_str();
  app.add_option("-o,--output", g.output, "Write the report here instead of stdout");

  EstimateOptions eo;
  CLI::App* estimate = app.add_subcommand("estimate", "Covariance and precision estimate");
  estimate->add_option("input", eo.input, "Sample CSV (or matrix CSV with --matrix)")->required();
  estimate->add_option("--kind", eo.kind, "kl | wasserstein | sstein | sqfrob | wfrob")
      ->capture_default_str();
  estimate->add_option("--tau", eo.tau, "Target parameter tau");
  estimate->add_option("--rho", eo.rho, "Ambiguity radius");
  estimate->add_option("--tuning", eo.tuning, "fixed | plugin | grid");
  estimate->add_flag("--matrix", eo.matrix, "Input is a p x p nominal covariance");
  estimate->add_option("--n", eo.n, "Sample size behind a --matrix input");
  estimate->add_option("--covariance", eo.covariance, "centered | uncentered")
      ->capture_default_str();

  TuneOptions to;
  CLI::App* tune = app.add_subcommand("tune", "Plug-in tau and radius");
  tune->add_option("input", to.input, "Sample CSV (or matrix CSV with --matrix)");
  tune->add_option("--kind", to.kind, "kl | wasserstein | sstein")->capture_default_str();
  tune->add_flag("--matrix", to.matrix, "Input is a p x p nominal covariance");
  tune->add_option("--n", to.n, "Sample size");
  tune->add_option("--covariance", to.covariance, "centered | uncentered")->capture_default_str();

  RadiusOptions ro;
  CLI::App* radius = app.add_subcommand("radius-sim", "Best-radius scaling experiment");
  radius->add_option("--kind", ro.kind, "kl | wasserstein | sstein")->capture_default_str();
  radius->add_option("--p", ro.p, "Dimension")->capture_default_str();
  radius->add_option("--n", ro.n, "Sample sizes: start:stop:step or a comma list")
      ->capture_default_str();
  radius->add_option("--repeats", ro.repeats, "Repeats per sample size")->capture_default_str();
  radius->add_option("--grid-lo", ro.grid_lo, "Smallest radius")->capture_default_str();
  radius->add_option("--grid-hi", ro.grid_hi, "Largest radius")->capture_default_str();
  radius->add_option("--grid-points", ro.grid_points, "Log-spaced grid size")
      ->capture_default_str();
  radius->add_option("--csv", ro.csv, "Also write the per-n table as CSV");

  RxOptions xo;
  CLI::App* rx = app.add_subcommand("rx", "RX anomaly scores and AUC");
  rx->add_option("input", xo.input, "Labeled samples CSV (last column 0/1)")->required();
  rx->add_option("--estimator", xo.estimator, "sample | lw | <kind>-plugin")
      ->capture_default_str();
  rx->add_option("--csv", xo.csv, "Also write scores and labels as CSV");

  AbOptions ao;
  CLI::App* ab = app.add_subcommand("abtest", "Synthetic A/B metric-learning benchmark");
  ab->add_option("--p", ao.p, "Features")->capture_default_str();
  ab->add_option("--n", ao.n, "Training group size")->capture_default_str();
  ab->add_option("--train-pairs", ao.train_pairs, "Training experiments")->capture_default_str();
  ab->add_option("--test-pairs", ao.test_pairs, "Test pairs")->capture_default_str();
  ab->add_option("--recognizable", ao.recognizable, "Fraction of A/B test pairs")
      ->capture_default_str();
  ab->add_option("--group-size", ao.group_size, "Test group size")->capture_default_str();
  ab->add_option("--repeats", ao.repeats, "Independent runs")->capture_default_str();
  ab->add_option("--estimator", ao.estimators, "Estimators to compare")->capture_default_str();

  PortfolioOptions po;
  CLI::App* portfolio = app.add_subcommand("portfolio", "Rolling min-variance backtest");
  portfolio->add_option("input", po.input, "Returns CSV with asset-name header")->required();
  portfolio->add_option("--window", po.window, "Estimation window")->capture_default_str();
  portfolio->add_option("--estimator", po.estimator, "sample | lw | <kind>-plugin")
      ->capture_default_str();
  portfolio->add_option("--csv", po.csv, "Also write returns and weights as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  return guarded(err, [&] {
    std::string text;
    if (estimate->parsed()) {
      text = cmd_estimate(eo, g);
    } else if (tune->parsed()) {
      // The kind is checked before any input is touched.
      if (!supports_plug_in(parse_kind(to.kind))) {
        throw Unsupported("plug-in tuning is not available for the " +
                          std::string(kind_label(parse_kind(to.kind))) + " divergence");
      }
      if (to.input.empty()) throw InvalidInput("tune needs an input file");
      text = cmd_tune(to, g);
    } else if (radius->parsed()) {
      text = cmd_radius(ro, g);
    } else if (rx->parsed()) {
      text = cmd_rx(xo, g);
    } else if (ab->parsed()) {
      text = cmd_abtest(ao, g, err);
    } else if (portfolio->parsed()) {
      text = cmd_portfolio(po, g);
    }
    emit(g, text, out);
  });
}

}  // namespace scope::cli
