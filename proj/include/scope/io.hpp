#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "scope/abtest.hpp"
#include "scope/estimator.hpp"
#include "scope/portfolio.hpp"
#include "scope/radius_experiment.hpp"
#include "scope/synthetic.hpp"
#include "scope/tuning.hpp"

namespace scope::io {

using nlohmann::json;

/// Numeric CSV table. A first line containing any non-numeric field is taken
/// as a header. Empty lines are skipped; ragged rows are rejected.
struct CsvTable {
  std::vector<std::string> header;
  Matrix values;
};

CsvTable parse_csv(std::istream& in, const std::string& source);
CsvTable read_csv(const std::string& path);

/// p x p symmetric matrix without header.
SymMatrix read_symmetric_matrix(const std::string& path);

/// n x p samples, optional header.
SampleMatrix read_samples(const std::string& path);

/// Header of asset names (required), one row of decimal returns per period.
struct ReturnsTable {
  std::vector<std::string> assets;
  Matrix returns;
};
ReturnsTable read_returns(const std::string& path);

/// p feature columns followed by an integer 0/1 label column.
struct LabeledSamples {
  SampleMatrix samples;
  std::vector<int> labels;
};
LabeledSamples read_labeled_samples(const std::string& path);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Finite values as numbers, anything else as null.
json number(double v);
json vector_json(const Vector& v);
json vector_json(const std::vector<double>& v);
/// Row-major nested arrays.
json matrix_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json to_json(const ScopeEstimate& e);
json to_json(const TuningResult& t);
json to_json(const RadiusExperimentResult& r);
json to_json(const PerformanceMetrics& m);
json to_json(const BacktestReport& b);
json to_json(const AbSimulationResult& r);

/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);

}  // namespace scope::io
