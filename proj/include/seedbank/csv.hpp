#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <system_error>

namespace seedbank {

// Shortest round-trip decimal representation; locale-independent, '.' as
// the decimal separator, so identical inputs give byte-identical files.
inline std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

inline std::string format_optional(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

// Minimal CSV row builder: comma separated, LF terminated.
class CsvRow {
 public:
  CsvRow& add(const std::string& field) {
    if (!line_.empty()) line_ += ',';
    line_ += field;
    return *this;
  }
  CsvRow& add(const char* field) { return add(std::string(field)); }
  CsvRow& add(double value) { return add(format_double(value)); }
  CsvRow& add(const std::optional<double>& value) { return add(format_optional(value)); }
  CsvRow& add(long value) { return add(std::to_string(value)); }
  CsvRow& add(int value) { return add(std::to_string(value)); }
  CsvRow& add(std::uint64_t value) { return add(std::to_string(value)); }

  std::string str() const { return line_ + "\n"; }

 private:
  std::string line_;
};

}  // namespace seedbank
