// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include "spde/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace spde {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
  if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
}

void CsvWriter::header(std::span<const std::string> cols) { cells(cols); }

void CsvWriter::row(std::span<const double> vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out_ << ',';
    out_ << g17(vals[i]);
  }
  out_ << '\n';
}

void CsvWriter::cells(std::span<const std::string> vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out_ << ',';
    out_ << vals[i];
  }
  out_ << '\n';
}

}  // namespace spde
