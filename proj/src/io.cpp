#include "scope/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "scope/error.hpp"

namespace scope::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_double(const std::string& s, double& value) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  value = std::strtod(s.c_str(), &end);
  return errno == 0 && end == s.c_str() + s.size() && std::isfinite(value);
}

}  // namespace

CsvTable parse_csv(std::istream& in, const std::string& source) {
  CsvTable table;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t i = 0; i < fields.size(); ++i) numeric = numeric && parse_double(fields[i], row[i]);
    if (first && !numeric) {
      table.header = fields;
      first = false;
      continue;
    }
    first = false;
    if (!numeric) {
      throw InvalidInput(source + ":" + std::to_string(line_no) + ": non-numeric field");
    }
    const std::size_t width = !rows.empty() ? rows.front().size()
                              : !table.header.empty() ? table.header.size()
                                                      : row.size();
    if (row.size() != width) {
      throw InvalidInput(source + ":" + std::to_string(line_no) + ": expected " +
                         std::to_string(width) + " fields, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidInput(source + ": no data rows");
  table.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      table.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return parse_csv(in, path);
}

SymMatrix read_symmetric_matrix(const std::string& path) {
  CsvTable t = read_csv(path);
  if (!t.header.empty()) throw InvalidInput(path + ": matrix file must not have a header");
  if (t.values.rows() != t.values.cols()) {
    throw InvalidInput(path + ": matrix is " + std::to_string(t.values.rows()) + " x " +
                       std::to_string(t.values.cols()) + ", expected square");
  }
  return SymMatrix(std::move(t.values));
}

SampleMatrix read_samples(const std::string& path) { return SampleMatrix(read_csv(path).values); }

ReturnsTable read_returns(const std::string& path) {
  CsvTable t = read_csv(path);
  if (t.header.empty()) throw InvalidInput(path + ": returns file needs a header of asset names");
  return {std::move(t.header), std::move(t.values)};
}

LabeledSamples read_labeled_samples(const std::string& path) {
  const CsvTable t = read_csv(path);
  if (t.values.cols() < 2) throw InvalidInput(path + ": need feature columns and a label column");
  const Index p = t.values.cols() - 1;
  std::vector<int> labels;
  for (Index i = 0; i < t.values.rows(); ++i) {
    const double v = t.values(i, p);
    if (v != 0.0 && v != 1.0) {
      throw InvalidInput(path + ": label in row " + std::to_string(i + 1) + " is not 0 or 1");
    }
    labels.push_back(static_cast<int>(v));
  }
  return {SampleMatrix(t.values.leftCols(p)), std::move(labels)};
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << json(row[i]).dump();
    out << '\n';
  }
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vector_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

json vector_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(vector_json(Vector(m.row(i).transpose())));
  return out;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("matrix JSON must be a non-empty array");
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j.front().size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw InvalidInput("matrix JSON rows differ in length");
    }
    for (Index k = 0; k < cols; ++k) {
      const json& v = row.at(static_cast<std::size_t>(k));
      if (!v.is_number()) throw InvalidInput("matrix JSON entry is not a number");
      m(i, k) = v.get<double>();
    }
  }
  return m;
}

json to_json(const ScopeEstimate& e) {
  return {
      {"p", e.sigma_star.dim()},
      {"kind", std::string(kind_name(e.kind))},
      {"tau", number(e.tau)},
      {"rho", number(e.rho_used)},
      {"rho_max", number(e.rho_max)},
      {"gamma_star", number(e.gamma_star)},
      {"target_scale", number(e.target_scale)},
      {"binding", e.binding},
      {"scalar_nominal", e.scalar_nominal},
      {"eigenvalues_nominal", vector_json(e.nominal_spectrum)},
      {"eigenvalues_shrunk", vector_json(e.shrunk_spectrum)},
      {"sigma_star", matrix_json(e.sigma_star.matrix())},
      {"x_star", matrix_json(e.x_star.matrix())},
      {"condition_before", number(e.condition_before)},
      {"condition_after", number(e.condition_after)},
      {"dual_residual", number(e.dual_residual)},
      {"phi_residual", number(e.phi_residual)},
  };
}

json to_json(const TuningResult& t) {
  return {
      {"kind", std::string(kind_name(t.kind))},
      {"n", t.n},
      {"tau_star", number(t.tau_star)},
      {"target_scale", number(t.target_scale)},
      {"rho_star", number(t.rho_star_constant)},
      {"rho_n", number(t.rho_n)},
      {"effective_rank", t.effective_rank},
  };
}

json to_json(const RadiusExperimentResult& r) {
  json rows = json::array();
  for (const RadiusRow& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"log_n", number(std::log(static_cast<double>(row.n)))},
                    {"rho_best", number(row.rho_best)},
                    {"log_rho_best", number(std::log(row.rho_best))},
                    {"grid_index", row.best_index},
                    {"mean_loss", number(row.mean_loss)}});
  }
  return {
      {"fit",
       {{"slope", number(r.fit.slope)},
        {"intercept", number(r.fit.intercept)},
        {"r_squared", number(r.fit.r_squared)}}},
      {"tau_star", number(r.tau_star)},
      {"sigma0", matrix_json(r.sigma0.matrix())},
      {"rows", rows},
  };
}

json to_json(const PerformanceMetrics& m) {
  return {
      {"average_return_pct", number(m.average_return)},
      {"sharpe", number(m.sharpe)},
      {"sharpe_undefined", m.sharpe_undefined},
      {"sortino", number(m.sortino)},
      {"sortino_undefined", m.sortino_undefined},
      {"cumulative_return", number(m.cumulative_return)},
      {"cumulative_return_pct", number(m.cumulative_return_pct)},
  };
}

json to_json(const BacktestReport& b) {
  json weights = json::array();
  for (const Vector& w : b.weights_history) weights.push_back(vector_json(w));
  return {
      {"estimator", b.estimator},
      {"window", b.window},
      {"metrics", to_json(b.metrics)},
      {"monthly_returns", vector_json(b.monthly_returns)},
      {"weights_history", weights},
  };
}

json to_json(const AbSimulationResult& r) {
  json est = json::array();
  for (const AbEstimatorSummary& s : r.estimators) {
    est.push_back({{"estimator", s.name},
                   {"mean_auc", number(s.mean_auc)},
                   {"var_auc", number(s.var_auc)},
                   {"aucs", vector_json(s.aucs)}});
  }
  return {{"estimators", est}, {"skipped_experiments", r.skipped_experiments}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace scope::io
