#include "table.hpp"

#include <cmath>
#include <cstdio>

namespace gapgrad::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

void Table::meta(std::string key, double value) {
  metadata.emplace_back(std::move(key), format_double(value));
}

void Table::write_csv(std::ostream& out) const {
  for (const auto& [k, v] : metadata) out << "# " << k << " = " << v << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

}  // namespace gapgrad::cli
