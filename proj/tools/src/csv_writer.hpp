#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkt::cli {

/// Comma-separated output with a fixed header. Reals are written with 17
/// significant digits so identical doubles give identical bytes.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
      : out_(path, std::ios::binary), width_(columns.size()) {
    if (!out_) {
      throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out_ << (i ? "," : "") << columns[i];
    }
    out_ << '\n';
  }

  template <typename... Fields>
  void row(const Fields&... fields) {
    static_assert(sizeof...(Fields) > 0);
    std::size_t index = 0;
    ((out_ << (index++ ? "," : "") << format(fields)), ...);
    out_ << '\n';
  }

  void close() {
    out_.close();
    if (!out_) {
      throw std::runtime_error("CSV write failed");
    }
  }

  std::size_t width() const { return width_; }

 private:
  static std::string format(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
  }
  static std::string format(int value) { return std::to_string(value); }

  std::ofstream out_;
  std::size_t width_;
};

}  // namespace qkt::cli
