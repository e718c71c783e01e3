#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace gapgrad::cli {

/// A number read from a config file. Decimals and fractions such as "1/3200"
/// or "2.5e-3" are kept as reduced integer ratios; only the final conversion
/// rounds. Inputs whose ratio does not fit 64 bits fall back to strtod.
class ExactNumber {
 public:
  ExactNumber() = default;
  static ExactNumber from_ratio(std::int64_t num, std::int64_t den);

  /// Throws std::invalid_argument for malformed text or a zero denominator.
  static ExactNumber parse(std::string_view text);

  bool exact() const { return exact_; }
  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  double value() const;
  const std::string& text() const { return text_; }

  /// Exact product / quotient when both sides are exact and the result fits.
  ExactNumber times(const ExactNumber& o) const;
  ExactNumber divided_by(const ExactNumber& o) const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  bool exact_ = true;
  double approx_ = 0.0;
  std::string text_ = "0";
};

}  // namespace gapgrad::cli
