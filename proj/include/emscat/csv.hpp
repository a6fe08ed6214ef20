#pragma once

// Minimal CSV writer with a fixed header row.  Floating-point values are
// printed with 17 significant digits so files round-trip bit-exactly and
// reruns are byte-identical.

#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "emscat/fsio.hpp"
#include "emscat/vec3.hpp"

namespace emscat {

class CsvBuilder {
 public:
  explicit CsvBuilder(const std::vector<std::string>& header)
      : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out_ += ',';
      out_ += header[i];
    }
    out_ += '\n';
  }

  CsvBuilder& num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return cell(buf);
  }

  CsvBuilder& num(const cplx& v) { return num(v.real()).num(v.imag()); }

  // Three real columns.
  CsvBuilder& vec(const Vec3& v) { return num(v.x).num(v.y).num(v.z); }

  // Six columns: re/im interleaved per component.
  CsvBuilder& cvec(const CVec3& v) { return num(v.x).num(v.y).num(v.z); }

  CsvBuilder& integer(long long v) { return cell(std::to_string(v)); }

  void end_row() {
    if (in_row_ != columns_) {
      throw std::logic_error("csv row has " + std::to_string(in_row_) +
                             " cells, header has " + std::to_string(columns_));
    }
    out_ += '\n';
    in_row_ = 0;
  }

  const std::string& str() const { return out_; }

  void write(const std::filesystem::path& path) const {
    if (in_row_ != 0) throw std::logic_error("csv ends mid-row");
    write_file_atomic(path, out_);
  }

 private:
  CsvBuilder& cell(const std::string& s) {
    if (in_row_ >= columns_) throw std::logic_error("csv row overflows header");
    if (in_row_) out_ += ',';
    out_ += s;
    ++in_row_;
    return *this;
  }

  std::size_t columns_;
  std::size_t in_row_ = 0;
  std::string out_;
};

}  // namespace emscat
