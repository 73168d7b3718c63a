// csv.hpp — comma-separated emission: header row, LF line endings, doubles
// in scientific notation with 17 significant digits.
#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace esqpt::csv {

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

class Writer {
 public:
  Writer(const std::string& path, const std::vector<std::string>& header)
      : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open " + path);
    write_row(header);
  }

  void write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

}  // namespace esqpt::csv
