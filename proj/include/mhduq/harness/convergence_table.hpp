#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mhduq::harness {

struct ConvergenceRow {
  double parameter = 0.0;
  std::vector<double> errors;                ///< one per field
  std::vector<std::optional<double>> rates;  ///< empty on the first row
};

/// Errors per field against a ladder parameter, with observed rates
///   rate_k = log(e_{k-1} / e_k) / |log(p_k / p_{k-1})|.
class ConvergenceTable {
 public:
  ConvergenceTable(std::string parameter_name, std::vector<std::string> fields);

  /// Throws if the error count is wrong or any error is not positive.
  void add_row(double parameter, const std::vector<double>& errors);

  const std::string& parameter_name() const { return parameter_name_; }
  const std::vector<std::string>& fields() const { return fields_; }
  const std::vector<ConvergenceRow>& rows() const { return rows_; }

  /// Rate of `field` on row k (k >= 1).
  double rate(std::size_t row, std::size_t field) const;

  void write_csv(std::ostream& out) const;
  void write_csv(const std::filesystem::path& path) const;
  void print(std::ostream& out) const;

 private:
  std::string parameter_name_;
  std::vector<std::string> fields_;
  std::vector<ConvergenceRow> rows_;
};

}  // namespace mhduq::harness
