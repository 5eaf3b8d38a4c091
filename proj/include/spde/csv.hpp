// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace spde {

// Shortest exact decimal form that round-trips a double (%.17g).
std::string g17(double v);

// Deterministic CSV emission: fixed formatting, '\n' line ends, no
// timestamps or environment-dependent content in the body.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void header(std::span<const std::string> cols);
  void row(std::span<const double> vals);
  void cells(std::span<const std::string> vals);

 private:
  std::ofstream out_;
};

}  // namespace spde
