#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace gapgrad::cli {

/// Numeric table with '#'-prefixed metadata lines, written as CSV with 17
/// significant digits. NaN cells are written as "nan".
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
  }
  void meta(std::string key, double value);

  void write_csv(std::ostream& out) const;
};

std::string format_double(double v);

}  // namespace gapgrad::cli
