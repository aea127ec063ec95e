#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace asym {

/// Fixed 12-significant-digit formatting so identical runs give identical bytes.
std::string format_number(double value);

/// CSV with a leading "# ..." comment line and a header row.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::string_view comment, const std::vector<std::string>& header);

  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  /// Row with a trailing free-text column (e.g. an error message).
  void row(const std::vector<double>& values, std::string_view note);

 private:
  std::ostream& out_;
};

std::string version_string();

}  // namespace asym
