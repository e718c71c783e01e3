#include "gapgrad/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gapgrad {

namespace {

constexpr double kPi = std::numbers::pi;

// cosh(xi) + cos(theta) vanishes only at (0, pi); below this the point is
// treated as the point at infinity.
constexpr double kSingularTol = 1e-14;

void require_regular(BipolarPoint p) {
  if (std::cosh(p.xi) + std::cos(p.theta) <= kSingularTol) {
    throw SingularPointError("bipolar point (0, pi) maps to infinity");
  }
}

}  // namespace

double dot(Vec2 a, Vec2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }

double norm(Vec2 a) { return std::hypot(a.x1, a.x2); }

void DiskPairGeometry::validate() const {
  if (!(std::isfinite(r_i) && std::isfinite(r_e) && std::isfinite(eps))) {
    throw DomainError("disk geometry must be finite");
  }
  if (!(r_i > 0.0 && r_i < r_e)) {
    throw DomainError("disk geometry requires 0 < r_i < r_e");
  }
  if (!(eps > 0.0)) {
    throw DomainError("disk geometry requires eps > 0");
  }
  if (!(eps < r_e - r_i)) {
    throw DomainError("disk geometry requires eps < r_e - r_i (inclusion touches or is concentric)");
  }
}

BipolarFrame derive_frame(const DiskPairGeometry& geom) {
  geom.validate();
  const double ri = geom.r_i;
  const double re = geom.r_e;
  const double eps = geom.eps;
  const double d = re - ri - eps;  // distance between the two centres

  BipolarFrame f;
  f.geometry = geom;
  f.c_i = (re * re - ri * ri - d * d) / (2.0 * d);
  f.c_e = f.c_i + d;
  f.x_0 = f.c_e - re;
  f.alpha = std::sqrt(eps * (2.0 * ri + eps) * (2.0 * re - eps) * (2.0 * re - 2.0 * ri - eps)) /
            (2.0 * d);
  // 0.5 * ln((c + alpha) / (c - alpha)) == atanh(alpha / c)
  f.xi_i = std::atanh(f.alpha / f.c_i);
  f.xi_e = std::atanh(f.alpha / f.c_e);
  // 0.5 * ln[((c_i + a)(c_e - a)) / ((c_i - a)(c_e + a))] collapsed into one atanh
  f.xi_gap = std::atanh(f.alpha * d / (f.c_i * f.c_e - f.alpha * f.alpha));
  f.r_star = std::sqrt(2.0 * ri * re / (re - ri));
  return f;
}

double normalize_angle(double theta) {
  double t = std::remainder(theta, 2.0 * kPi);  // [-pi, pi]
  if (t <= -kPi) t += 2.0 * kPi;
  return t;
}

CartesianPoint to_cartesian(const BipolarFrame& frame, BipolarPoint p) {
  require_regular(p);
  const double a = std::abs(p.xi);
  // Divide numerator and denominator by cosh(xi) so large |xi| stays finite.
  const double e = std::exp(-2.0 * a);
  const double sech = 2.0 * std::exp(-a) / (1.0 + e);
  const double tanh_xi = std::tanh(p.xi);
  const double denom = 1.0 + std::cos(p.theta) * sech;
  return {frame.alpha * tanh_xi / denom, frame.alpha * std::sin(p.theta) * sech / denom};
}

BipolarPoint to_bipolar(const BipolarFrame& frame, CartesianPoint x) {
  const double a = frame.alpha;
  const double plus2 = (a + x.x1) * (a + x.x1) + x.x2 * x.x2;
  const double minus2 = (a - x.x1) * (a - x.x1) + x.x2 * x.x2;
  const double pole_tol = 1e-30 * a * a;
  if (plus2 <= pole_tol || minus2 <= pole_tol) {
    throw SingularPointError("point coincides with a pole of the bipolar frame");
  }
  // |a+z|^2 - |a-z|^2 = 4 a x1 exactly; log1p keeps accuracy near the xi = 0 axis.
  // The argument stays nonnegative by taking the smaller of the two distances
  // as denominator, which also keeps accuracy near either pole.
  const double xi = x.x1 >= 0.0 ? 0.5 * std::log1p(4.0 * a * x.x1 / minus2)
                                : -0.5 * std::log1p(-4.0 * a * x.x1 / plus2);
  // arg((a+z)(a-conj z)) with (a+z)(a-conj z) = a^2 - |z|^2 + 2 i a x2
  const double re = (a - std::hypot(x.x1, x.x2)) * (a + std::hypot(x.x1, x.x2));
  const double theta = std::atan2(2.0 * a * x.x2, re);
  return {xi, normalize_angle(theta)};
}

double scale_factor(const BipolarFrame& frame, BipolarPoint p) {
  require_regular(p);
  return (std::cosh(p.xi) + std::cos(p.theta)) / frame.alpha;
}

double scale_ratio(double xi, double xi_other, double theta) {
  const double c = std::cos(theta);
  const double big = std::abs(xi_other);
  if (big > 600.0) {
    // cosh(xi_other) would overflow; the ratio is below 1e-250 anyway.
    return (std::cosh(xi) + c) * 2.0 * std::exp(-big);
  }
  return (std::cosh(xi) + c) / (std::cosh(xi_other) + c);
}

BipolarPoint reflect_level(const BipolarFrame& /*frame*/, double xi0, BipolarPoint p) {
  if (xi0 == 0.0) {
    throw DomainError("reflection level xi0 must be nonzero");
  }
  const BipolarPoint r{2.0 * xi0 - p.xi, p.theta};
  if (std::cosh(r.xi) + std::cos(r.theta) <= kSingularTol) {
    throw SingularPointError("reflection of (2 xi0, pi) is the point at infinity");
  }
  return r;
}

LocalBasis basis_vectors(const BipolarFrame& /*frame*/, BipolarPoint p) {
  require_regular(p);
  // dz/dw = alpha / (1 + cosh w), w = xi + i theta, and |1 + cosh w| = cosh xi + cos theta.
  // e_xi is the direction of dz/dw, e_theta = i e_xi. Scaled by sech(xi) to stay finite.
  const double a = std::abs(p.xi);
  const double sech = 2.0 * std::exp(-a) / (1.0 + std::exp(-2.0 * a));
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  const double ex = sech + c;
  const double ey = -std::tanh(p.xi) * s;
  const double n = std::hypot(ex, ey);
  const Vec2 e_xi{ex / n, ey / n};
  return {e_xi, {-e_xi.x2, e_xi.x1}};
}

Vec2 gradient_from_partials(const BipolarFrame& frame, BipolarPoint p, double d_xi,
                            double d_theta) {
  const double h = scale_factor(frame, p);
  const LocalBasis b = basis_vectors(frame, p);
  return (h * d_xi) * b.e_xi + (h * d_theta) * b.e_theta;
}

Region resolve_region(const BipolarFrame& frame, double xi, Region region) {
  if (!std::isfinite(xi)) throw SingularPointError("point coincides with the pole");
  const double slack = 1e-12 * std::max(1.0, frame.xi_i);
  if (xi < frame.xi_e - slack) throw DomainError("point lies outside the outer disk");
  if (region == Region::Auto) return xi < frame.xi_i ? Region::Shell : Region::Core;
  if (region == Region::Shell && xi > frame.xi_i + slack) {
    throw DomainError("shell branch requested inside the inclusion");
  }
  if (region == Region::Core && xi < frame.xi_i - slack) {
    throw DomainError("core branch requested outside the inclusion");
  }
  return region;
}

}  // namespace gapgrad
