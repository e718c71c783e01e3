#include "exact_number.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace gapgrad::cli {

namespace {

__extension__ typedef __int128 Wide;

constexpr Wide kLimit = static_cast<Wide>(INT64_MAX);

struct Ratio {
  Wide num = 0;
  Wide den = 1;
};

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  return a == 0 ? 1 : a;
}

std::optional<Ratio> reduce(Ratio r) {
  if (r.den < 0) {
    r.num = -r.num;
    r.den = -r.den;
  }
  const Wide g = wide_gcd(r.num, r.den);
  r.num /= g;
  r.den /= g;
  if (r.num > kLimit || r.num < -kLimit || r.den > kLimit) return std::nullopt;
  return r;
}

bool pow10(int e, Wide& out) {
  out = 1;
  for (int i = 0; i < e; ++i) {
    out *= 10;
    if (out > kLimit) return false;
  }
  return true;
}

// [+-]? digits [. digits]? ([eE] [+-]? digits)?  -> ratio, or nullopt when too large.
// Throws for malformed text.
std::optional<Ratio> parse_decimal(std::string_view s) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  Wide mantissa = 0;
  bool overflow = false;
  int digits = 0;
  int scale = 0;
  auto take_digit = [&](char c) {
    if (mantissa <= kLimit) {
      mantissa = mantissa * 10 + (c - '0');
    } else {
      overflow = true;
    }
    ++digits;
  };
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) take_digit(s[i++]);
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      take_digit(s[i++]);
      --scale;
    }
  }
  if (digits == 0) throw std::invalid_argument("expected a number");
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool neg_exp = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg_exp = s[i++] == '-';
    int e = 0;
    int exp_digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      if (e < 100000) e = e * 10 + (s[i] - '0');
      ++i;
      ++exp_digits;
    }
    if (exp_digits == 0) throw std::invalid_argument("malformed exponent");
    scale += neg_exp ? -e : e;
  }
  if (i != s.size()) throw std::invalid_argument("unexpected characters in number");
  if (overflow) return std::nullopt;
  Ratio r{negative ? -mantissa : mantissa, 1};
  Wide p = 1;
  if (!pow10(std::abs(scale), p)) return std::nullopt;
  if (scale > 0) {
    r.num *= p;
    if (r.num > kLimit || r.num < -kLimit) return std::nullopt;
  } else {
    r.den = p;
  }
  return reduce(r);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double strtod_checked(std::string_view s) {
  const std::string copy(s);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (end != copy.c_str() + copy.size()) throw std::invalid_argument("malformed number");
  return v;
}

}  // namespace

ExactNumber ExactNumber::from_ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  const auto r = reduce({num, den});
  if (!r) throw std::invalid_argument("ratio out of range");
  ExactNumber n;
  n.num_ = static_cast<std::int64_t>(r->num);
  n.den_ = static_cast<std::int64_t>(r->den);
  n.text_ = n.den_ == 1 ? std::to_string(n.num_)
                        : std::to_string(n.num_) + "/" + std::to_string(n.den_);
  return n;
}

ExactNumber ExactNumber::parse(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  const std::size_t slash = s.find('/');
  const std::string_view top = trim(s.substr(0, slash));
  const std::string_view bottom =
      slash == std::string_view::npos ? std::string_view{"1"} : trim(s.substr(slash + 1));
  if (bottom.find('/') != std::string_view::npos) throw std::invalid_argument("nested fraction");

  const auto a = parse_decimal(top);
  const auto b = parse_decimal(bottom);
  ExactNumber n;
  n.text_ = std::string(s);
  if (a && b) {
    if (b->num == 0) throw std::invalid_argument("zero denominator");
    const auto r = reduce({a->num * b->den, a->den * b->num});
    if (r) {
      n.num_ = static_cast<std::int64_t>(r->num);
      n.den_ = static_cast<std::int64_t>(r->den);
      return n;
    }
  }
  const double bottom_value = strtod_checked(bottom);
  if (bottom_value == 0.0) throw std::invalid_argument("zero denominator");
  n.exact_ = false;
  n.approx_ = strtod_checked(top) / bottom_value;
  return n;
}

double ExactNumber::value() const {
  if (!exact_) return approx_;
  // Both parts are below 2^63; dividing the rounded parts is exact whenever
  // they fit 53 bits, which covers every ratio written by hand.
  return static_cast<double>(num_) / static_cast<double>(den_);
}

ExactNumber ExactNumber::times(const ExactNumber& o) const {
  ExactNumber n;
  if (exact_ && o.exact_) {
    const auto r = reduce({static_cast<Wide>(num_) * o.num_, static_cast<Wide>(den_) * o.den_});
    if (r) return from_ratio(static_cast<std::int64_t>(r->num), static_cast<std::int64_t>(r->den));
  }
  n.exact_ = false;
  n.approx_ = value() * o.value();
  n.text_ = text_ + "*" + o.text_;
  return n;
}

ExactNumber ExactNumber::divided_by(const ExactNumber& o) const {
  if (o.exact_ ? o.num_ == 0 : o.approx_ == 0.0) throw std::invalid_argument("division by zero");
  ExactNumber n;
  if (exact_ && o.exact_) {
    const auto r = reduce({static_cast<Wide>(num_) * o.den_, static_cast<Wide>(den_) * o.num_});
    if (r) return from_ratio(static_cast<std::int64_t>(r->num), static_cast<std::int64_t>(r->den));
  }
  n.exact_ = false;
  n.approx_ = value() / o.value();
  n.text_ = text_ + "/(" + o.text_ + ")";
  return n;
}

}  // namespace gapgrad::cli
