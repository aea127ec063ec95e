#include "asym/csv.hpp"

#include <cstdio>

namespace asym {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string version_string() { return std::string("asym ") + ASYM_VERSION; }

CsvWriter::CsvWriter(std::ostream& out, std::string_view comment,
                     const std::vector<std::string>& header)
    : out_(out) {
  out_ << "# " << version_string();
  if (!comment.empty()) out_ << " " << comment;
  out_ << "\n";
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << "\n";
}

void CsvWriter::row(std::initializer_list<double> values) {
  row(std::vector<double>(values));
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values, std::string_view note) {
  for (std::size_t i = 0; i < values.size(); ++i) out_ << format_number(values[i]) << ",";
  out_ << note << "\n";
}

}  // namespace asym
