#include "spherequant/sweep_report.hpp"

#include <cmath>
#include <stdexcept>

#include "spherequant/format.hpp"

namespace sq {

SweepReport::SweepReport(std::string parameter_name, std::vector<std::string> columns)
    : parameter_name_(std::move(parameter_name)), columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("SweepReport: need at least one column");
}

void SweepReport::add_row(double parameter, const std::vector<double>& values) {
  if (!std::isfinite(parameter)) throw std::invalid_argument("SweepReport: parameter not finite");
  if (!parameters_.empty() && parameter <= parameters_.back()) {
    throw std::invalid_argument("SweepReport: parameters must be strictly increasing");
  }
  if (values.size() != columns_.size()) {
    throw std::invalid_argument("SweepReport: row width does not match columns");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("SweepReport: value not finite");
  }
  parameters_.push_back(parameter);
  values_.push_back(values);
}

std::size_t SweepReport::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name) return i;
  }
  throw std::invalid_argument("SweepReport: no column named '" + name + "'");
}

std::vector<double> SweepReport::column(const std::string& name) const {
  const std::size_t idx = column_index(name);
  std::vector<double> out(parameters_.size());
  for (std::size_t r = 0; r < parameters_.size(); ++r) out[r] = values_[r][idx];
  return out;
}

RateFit fit_rate(const SweepReport& report, const std::string& column) {
  const std::vector<double> ys = report.column(column);
  if (ys.size() < 4) throw std::invalid_argument("fit_rate: need at least 4 rows");

  std::vector<double> lx(ys.size()), ly(ys.size());
  for (std::size_t r = 0; r < ys.size(); ++r) {
    const double p = report.parameter(r);
    if (p <= 0.0) throw std::invalid_argument("fit_rate: parameters must be positive");
    if (ys[r] <= 0.0) throw std::invalid_argument("fit_rate: values must be positive");
    lx[r] = std::log(p);
    ly[r] = std::log(ys[r]);
  }
  const double n = static_cast<double>(ys.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t r = 0; r < ys.size(); ++r) {
    sx += lx[r];
    sy += ly[r];
    sxx += lx[r] * lx[r];
    sxy += lx[r] * ly[r];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_rate: degenerate parameter column");
  RateFit fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.exponent * sx) / n;
  fit.prefactor = std::exp(intercept);

  double ss_res = 0.0, ss_tot = 0.0;
  const double mean_y = sy / n;
  for (std::size_t r = 0; r < ys.size(); ++r) {
    const double pred = fit.exponent * lx[r] + intercept;
    ss_res += (ly[r] - pred) * (ly[r] - pred);
    ss_tot += (ly[r] - mean_y) * (ly[r] - mean_y);
  }
  fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

std::string to_csv(const SweepReport& report) {
  std::string out = report.parameter_name();
  for (const auto& c : report.columns()) {
    out += ',';
    out += c;
  }
  out += '\n';
  for (std::size_t r = 0; r < report.n_rows(); ++r) {
    out += format_double(report.parameter(r));
    for (std::size_t c = 0; c < report.columns().size(); ++c) {
      out += ',';
      out += format_double(report.value(r, c));
    }
    out += '\n';
  }
  return out;
}

nlohmann::json report_json(const SweepReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < report.n_rows(); ++r) {
    nlohmann::json row;
    row[report.parameter_name()] = report.parameter(r);
    for (std::size_t c = 0; c < report.columns().size(); ++c) {
      row[report.columns()[c]] = report.value(r, c);
    }
    rows.push_back(row);
  }
  nlohmann::json j;
  j["parameter"] = report.parameter_name();
  j["columns"] = report.columns();
  j["rows"] = rows;
  if (report.fit) {
    j["fit"] = {{"exponent", report.fit->exponent},
                {"prefactor", report.fit->prefactor},
                {"r_squared", report.fit->r_squared}};
  }
  return j;
}

}  // namespace sq
