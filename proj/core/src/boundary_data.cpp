#include "gapgrad/boundary_data.hpp"

#include <cmath>

namespace gapgrad {

const char* to_string(BoundaryKind kind) {
  return kind == BoundaryKind::Neumann ? "neumann" : "dirichlet";
}

FourierBoundaryData::FourierBoundaryData(BoundaryKind kind, double r_e,
                                         std::vector<double> cos_coeffs,
                                         std::vector<double> sin_coeffs, std::size_t mode_cap)
    : kind_(kind), r_e_(r_e), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  if (!(r_e > 0.0) || !std::isfinite(r_e)) {
    throw DomainError("boundary data needs a positive outer radius");
  }
  if (mode_cap == 0) {
    throw DomainError("boundary data mode cap must be positive");
  }
  for (double v : cos_) {
    if (!std::isfinite(v)) throw DomainError("boundary coefficient is not finite");
  }
  for (double v : sin_) {
    if (!std::isfinite(v)) throw DomainError("boundary coefficient is not finite");
  }
  if (cos_.size() > mode_cap) {
    cos_.resize(mode_cap);
    truncated_ = true;
  }
  if (sin_.size() > mode_cap) {
    sin_.resize(mode_cap);
    truncated_ = true;
  }
}

double FourierBoundaryData::evaluate(double t) const {
  double s = 0.0;
  for (std::size_t n = 1; n <= cos_.size(); ++n) s += cos_[n - 1] * std::cos(n * t);
  for (std::size_t n = 1; n <= sin_.size(); ++n) s += sin_[n - 1] * std::sin(n * t);
  return s;
}

double FourierBoundaryData::regularity_norm(double delta) const {
  double s = 0.0;
  for (std::size_t n = 1; n <= mode_count(); ++n) {
    const double a = n <= cos_.size() ? std::abs(cos_[n - 1]) : 0.0;
    const double b = n <= sin_.size() ? std::abs(sin_[n - 1]) : 0.0;
    s += std::pow(static_cast<double>(n), 1.0 + delta) * (a + b);
  }
  return s;
}

HarmonicDiskField::HarmonicDiskField(CartesianPoint center, double radius)
    : HarmonicDiskField(center, radius, {}, 0.0) {}

HarmonicDiskField::HarmonicDiskField(CartesianPoint center, double radius,
                                     std::vector<Complex> coeffs, double constant)
    : center_(center), radius_(radius), coeffs_(std::move(coeffs)), constant_(constant) {
  if (!(radius > 0.0)) throw DomainError("harmonic field needs a positive radius");
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

bool HarmonicDiskField::contains(CartesianPoint x) const {
  const double r = std::hypot(x.x1 - center_.x1, x.x2 - center_.x2);
  return r <= radius_ * (1.0 + 1e-9);
}

void HarmonicDiskField::check(CartesianPoint x) const {
  if (!contains(x)) throw DomainError("point lies outside the disk of the harmonic field");
}

HarmonicDiskField HarmonicDiskField::translated(double dx) const {
  return {{center_.x1 + dx, center_.x2}, radius_, coeffs_, constant_};
}

double HarmonicDiskField::value_unchecked(CartesianPoint x) const {
  const Complex w = (x.z() - center_.z()) / radius_;
  Complex acc{};
  for (std::size_t n = coeffs_.size(); n >= 1; --n) acc = (acc + coeffs_[n - 1]) * w;
  return constant_ + acc.real();
}

Vec2 HarmonicDiskField::gradient_unchecked(CartesianPoint x) const {
  const Complex w = (x.z() - center_.z()) / radius_;
  Complex acc{};
  for (std::size_t n = coeffs_.size(); n >= 1; --n) {
    acc = acc * w + static_cast<double>(n) * coeffs_[n - 1];
  }
  // f' = acc / radius; grad Re f = (Re f', -Im f')
  acc /= radius_;
  return {acc.real(), -acc.imag()};
}

double HarmonicDiskField::value(CartesianPoint x) const {
  check(x);
  return value_unchecked(x);
}

Vec2 HarmonicDiskField::gradient(CartesianPoint x) const {
  check(x);
  return gradient_unchecked(x);
}

double HarmonicDiskField::gradient_bound() const {
  double s = 0.0;
  for (std::size_t n = 1; n <= coeffs_.size(); ++n) s += n * std::abs(coeffs_[n - 1]);
  return s / radius_;
}

HarmonicDiskField harmonic_extension(const FourierBoundaryData& data) {
  const double r = data.radius();
  std::vector<Complex> c(data.mode_count());
  for (std::size_t n = 1; n <= c.size(); ++n) {
    const double a = n <= data.cos_coeffs().size() ? data.cos_coeffs()[n - 1] : 0.0;
    const double b = n <= data.sin_coeffs().size() ? data.sin_coeffs()[n - 1] : 0.0;
    const double scale = data.kind() == BoundaryKind::Neumann ? r / static_cast<double>(n) : 1.0;
    c[n - 1] = scale * Complex{a, -b};
  }
  return {{r, 0.0}, r, std::move(c)};
}

double eval_field(const HarmonicDiskField& field, CartesianPoint x) { return field.value(x); }

Vec2 grad_field(const HarmonicDiskField& field, CartesianPoint x) { return field.gradient(x); }

BlowUpDrivers extract_C1C2(const HarmonicDiskField& field) {
  const CartesianPoint touch{field.center().x1 - field.radius(), field.center().x2};
  const Vec2 g = field.gradient_unchecked(touch);
  return {g.x1, g.x2};
}

}  // namespace gapgrad
