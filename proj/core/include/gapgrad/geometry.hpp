#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace gapgrad {

using Complex = std::complex<double>;

/// Raised when an input lies outside the domain of an operation
/// (degenerate geometry, point outside a disk, k <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised at the coordinate singularities: the poles (+-alpha, 0) and the
/// bipolar point (0, pi) that maps to infinity.
class SingularPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Which side of the inclusion boundary {xi = xi_i} a quantity refers to.
/// Auto picks by xi (shell for xi < xi_i, core otherwise); the explicit
/// values select one-sided limits on the boundary itself.
enum class Region { Auto, Shell, Core };

struct Vec2 {
  double x1 = 0.0;
  double x2 = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x1, s * a.x2}; }
  Vec2& operator+=(Vec2 o) {
    x1 += o.x1;
    x2 += o.x2;
    return *this;
  }
};

double dot(Vec2 a, Vec2 b);
double norm(Vec2 a);

struct CartesianPoint {
  double x1 = 0.0;
  double x2 = 0.0;

  Complex z() const { return {x1, x2}; }
};

/// Bipolar coordinates; theta is kept in (-pi, pi].
struct BipolarPoint {
  double xi = 0.0;
  double theta = 0.0;
};

/// The three primitive lengths of the eccentric disk pair.
///
/// Omega is the disk of radius r_e centred at (r_e, 0); the inclusion D has
/// radius r_i and centre (r_i + eps, 0), so eps is the gap between the two
/// circles at the origin.
struct DiskPairGeometry {
  double r_i = 0.0;
  double r_e = 0.0;
  double eps = 0.0;

  /// Throws DomainError unless 0 < r_i < r_e and 0 < eps < r_e - r_i.
  void validate() const;
};

/// Derived constants of the bipolar frame in which both circles are xi-level
/// curves. After translation by x_0 the outer disk B_e is {xi > xi_e} and the
/// inclusion B_i is {xi > xi_i}; both contain the pole (alpha, 0).
///
/// Precision degrades for eps below about 1e-10 (alpha ~ sqrt(eps)).
struct BipolarFrame {
  DiskPairGeometry geometry;
  double alpha = 0.0;
  double c_i = 0.0;
  double c_e = 0.0;
  double x_0 = 0.0;
  double xi_i = 0.0;
  double xi_e = 0.0;
  /// xi_i - xi_e, evaluated from a single logarithm to avoid cancellation.
  double xi_gap = 0.0;
  double r_star = 0.0;
};

BipolarFrame derive_frame(const DiskPairGeometry& geom);

/// Wraps an angle into (-pi, pi].
double normalize_angle(double theta);

CartesianPoint to_cartesian(const BipolarFrame& frame, BipolarPoint p);
BipolarPoint to_bipolar(const BipolarFrame& frame, CartesianPoint x);

/// h = (cosh xi + cos theta) / alpha, so that |dz/dxi| = |dz/dtheta| = 1/h.
double scale_factor(const BipolarFrame& frame, BipolarPoint p);

/// h(xi, theta) / h(xi_other, theta) without overflow for large xi_other.
double scale_ratio(double xi, double xi_other, double theta);

/// Reflection across the level circle {xi = xi0}: (xi, theta) -> (2 xi0 - xi, theta).
BipolarPoint reflect_level(const BipolarFrame& frame, double xi0, BipolarPoint p);

struct LocalBasis {
  Vec2 e_xi;     ///< grad(xi) / |grad(xi)|
  Vec2 e_theta;  ///< grad(theta) / |grad(theta)|
};

LocalBasis basis_vectors(const BipolarFrame& frame, BipolarPoint p);

/// Resolves Auto to Shell (xi < xi_i) or Core and checks an explicit side
/// against xi. Throws DomainError outside the outer disk and
/// SingularPointError for a non-finite xi (the pole).
Region resolve_region(const BipolarFrame& frame, double xi, Region region);

/// Cartesian gradient from bipolar partials: grad f = h (f_xi e_xi + f_theta e_theta).
Vec2 gradient_from_partials(const BipolarFrame& frame, BipolarPoint p,
                            double d_xi, double d_theta);

}  // namespace gapgrad
