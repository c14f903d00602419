#include "nvn/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace nvn {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : path_(path), out_(path) {
  if (!out_)
    throw std::ios_base::failure("cannot open output file: " + path);
}

void CsvWriter::comment(const std::string& text) {
  out_ << "# " << text << "\n";
  if (!out_) throw std::ios_base::failure("write failed: " + path_);
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (size_t i = 0; i < columns.size(); ++i)
    out_ << (i ? "," : "") << columns[i];
  out_ << "\n";
  if (!out_) throw std::ios_base::failure("write failed: " + path_);
}

void CsvWriter::row(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i)
    out_ << (i ? "," : "") << format_double(values[i]);
  out_ << "\n";
  if (!out_) throw std::ios_base::failure("write failed: " + path_);
}

}  // namespace nvn
