#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

namespace exgrid {

// One CSV cell. Monostate renders as an empty field.
using CsvValue = std::variant<std::monostate, std::int64_t, double, std::string>;

// Renders a double with 9 significant digits, '.' decimal separator,
// locale-independent.
std::string format_csv_double(double value);

// Comma-separated, header row, '\n' line endings. Throws on I/O failure.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(std::initializer_list<CsvValue> values);
  void row(const std::vector<CsvValue>& values);
  void close();  // flush and fail loudly; also runs on destruction

  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

 private:
  void write_line(const std::vector<CsvValue>& values);
  std::ofstream out_;
  std::string path_;
  std::size_t columns_ = 0;
  bool closed_ = false;
};

}  // namespace exgrid
