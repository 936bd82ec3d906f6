#include "exgrid/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace exgrid {

std::string format_csv_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value,
                           std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), path_(path), columns_(header.size()) {
  if (!out_) throw std::runtime_error("cannot open for writing: " + path);
  std::vector<CsvValue> cells;
  cells.reserve(header.size());
  for (const std::string& h : header) cells.emplace_back(h);
  write_line(cells);
}

void CsvWriter::row(std::initializer_list<CsvValue> values) {
  row(std::vector<CsvValue>(values));
}

void CsvWriter::row(const std::vector<CsvValue>& values) {
  if (values.size() != columns_) {
    throw std::invalid_argument("CsvWriter: row width does not match header");
  }
  write_line(values);
}

void CsvWriter::write_line(const std::vector<CsvValue>& values) {
  std::string line;
  bool first = true;
  for (const CsvValue& v : values) {
    if (!first) line += ',';
    first = false;
    if (std::holds_alternative<std::int64_t>(v)) {
      line += std::to_string(std::get<std::int64_t>(v));
    } else if (std::holds_alternative<double>(v)) {
      line += format_csv_double(std::get<double>(v));
    } else if (std::holds_alternative<std::string>(v)) {
      line += std::get<std::string>(v);
    }
  }
  line += '\n';
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  if (!out_) throw std::runtime_error("write failed: " + path_);
}

void CsvWriter::close() {
  if (closed_) return;
  closed_ = true;
  out_.flush();
  if (!out_) throw std::runtime_error("write failed: " + path_);
  out_.close();
}

CsvWriter::~CsvWriter() {
  try {
    close();
  } catch (...) {
    // destructor must not throw; close() explicitly to observe failures
  }
}

}  // namespace exgrid
