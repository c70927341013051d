#include "mhduq/harness/convergence_table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace mhduq::harness {

ConvergenceTable::ConvergenceTable(std::string parameter_name, std::vector<std::string> fields)
    : parameter_name_(std::move(parameter_name)), fields_(std::move(fields)) {}

void ConvergenceTable::add_row(double parameter, const std::vector<double>& errors) {
  if (errors.size() != fields_.size()) throw std::invalid_argument("error count does not match the table fields");
  for (double e : errors)
    if (!(e > 0.0) || !std::isfinite(e)) throw std::invalid_argument("errors must be positive and finite");
  ConvergenceRow row{parameter, errors, {}};
  if (!rows_.empty()) {
    const ConvergenceRow& prev = rows_.back();
    const double span = std::abs(std::log(parameter / prev.parameter));
    if (!(span > 0.0)) throw std::invalid_argument("ladder parameters must differ");
    for (std::size_t f = 0; f < errors.size(); ++f) row.rates.push_back(std::log(prev.errors[f] / errors[f]) / span);
  }
  rows_.push_back(std::move(row));
}

double ConvergenceTable::rate(std::size_t row, std::size_t field) const {
  if (row == 0 || row >= rows_.size()) throw std::out_of_range("no rate on this row");
  return *rows_[row].rates.at(field);
}

void ConvergenceTable::write_csv(std::ostream& out) const {
  out << parameter_name_;
  for (const auto& f : fields_) out << ',' << f << ',' << f << "_rate";
  out << '\n';
  char buf[64];
  for (const auto& r : rows_) {
    std::snprintf(buf, sizeof buf, "%.10g", r.parameter);
    out << buf;
    for (std::size_t f = 0; f < fields_.size(); ++f) {
      std::snprintf(buf, sizeof buf, "%.10e", r.errors[f]);
      out << ',' << buf << ',';
      if (!r.rates.empty()) {
        std::snprintf(buf, sizeof buf, "%.6f", *r.rates[f]);
        out << buf;
      }
    }
    out << '\n';
  }
}

void ConvergenceTable::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(out);
}

void ConvergenceTable::print(std::ostream& out) const {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%12s", parameter_name_.c_str());
  out << buf;
  for (const auto& f : fields_) {
    std::snprintf(buf, sizeof buf, " %14s %6s", f.c_str(), "rate");
    out << buf;
  }
  out << '\n';
  for (const auto& r : rows_) {
    std::snprintf(buf, sizeof buf, "%12.6g", r.parameter);
    out << buf;
    for (std::size_t f = 0; f < fields_.size(); ++f) {
      if (r.rates.empty())
        std::snprintf(buf, sizeof buf, " %14.4e %6s", r.errors[f], "");
      else
        std::snprintf(buf, sizeof buf, " %14.4e %6.2f", r.errors[f], *r.rates[f]);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace mhduq::harness
