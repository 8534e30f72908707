#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sq {

struct RateFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
};

/// Table of observable values along one sweep parameter. Rows must arrive
/// with strictly increasing, finite parameters.
class SweepReport {
public:
  SweepReport(std::string parameter_name, std::vector<std::string> columns);

  void add_row(double parameter, const std::vector<double>& values);

  const std::string& parameter_name() const { return parameter_name_; }
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t n_rows() const { return parameters_.size(); }
  double parameter(std::size_t row) const { return parameters_.at(row); }
  double value(std::size_t row, std::size_t col) const { return values_.at(row).at(col); }
  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;

  std::optional<RateFit> fit;

private:
  std::string parameter_name_;
  std::vector<std::string> columns_;
  std::vector<double> parameters_;
  std::vector<std::vector<double>> values_;
};

// Least-squares fit of log(value) = exponent*log(parameter) + log(prefactor).
// Needs >= 4 rows and strictly positive parameters and values.
RateFit fit_rate(const SweepReport& report, const std::string& column);

// header: parameter name then column names; LF line endings; shortest
// round-trip doubles.
std::string to_csv(const SweepReport& report);

nlohmann::json report_json(const SweepReport& report);

}  // namespace sq
