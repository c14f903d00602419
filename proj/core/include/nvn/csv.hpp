#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace nvn {

// UTF-8, comma separated, '.' decimal point, 17 significant digits so doubles
// round-trip exactly, comment lines prefixed '#'. Output is deterministic.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void comment(const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

std::string format_double(double v);  // %.17g

}  // namespace nvn
