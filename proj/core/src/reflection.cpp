#include "gapgrad/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gapgrad {

namespace {

constexpr double kPi = std::numbers::pi;

HarmonicDiskField translated_field(const BipolarFrame& frame, const HarmonicDiskField& H) {
  const double re = frame.geometry.r_e;
  if (std::abs(H.radius() - re) > 1e-12 * re || std::abs(H.center().x1 - re) > 1e-12 * re ||
      H.center().x2 != 0.0) {
    throw DomainError("background field must live on the un-translated outer disk");
  }
  return H.translated(frame.x_0);
}

// grad H~ at (xi', theta) in the basis of (xi', theta).
struct ShiftedGradient {
  double value = 0.0;
  double along_xi = 0.0;
  double along_theta = 0.0;
};

ShiftedGradient shifted(const BipolarFrame& frame, const HarmonicDiskField& Ht, double xi,
                        double theta) {
  const BipolarPoint q{xi, theta};
  const CartesianPoint x = to_cartesian(frame, q);
  const LocalBasis b = basis_vectors(frame, q);
  const Vec2 g = Ht.gradient_unchecked(x);
  return {Ht.value_unchecked(x), dot(g, b.e_xi), dot(g, b.e_theta)};
}

// Sums H~ + sum_n c^{n+1} [a_w H~(A_n) + H~(B_n)] where
//   A_n: xi' = 2 xi_i - xi + 2n gap (shell, mirrored) or xi + 2n gap (core)
//   B_n: xi' = xi + 2(n+1) gap
// with c = -tau, a_w = +1 (Neumann) or c = tau, a_w = -1 (Dirichlet).
GradientSample reflection_sum(const BipolarFrame& frame, double k, const HarmonicDiskField& H,
                              BipolarPoint p, const ReflectionSeriesConfig& cfg, Region region,
                              BoundaryKind kind) {
  cfg.validate();
  const double t = tau(k);
  const Region side = resolve_region(frame, p.xi, region);
  const HarmonicDiskField Ht = translated_field(frame, H);
  p.theta = normalize_angle(p.theta);

  const ShiftedGradient base = shifted(frame, Ht, p.xi, p.theta);
  double value = base.value;
  double g_xi = base.along_xi;
  double g_theta = base.along_theta;

  GradientSample out;
  out.terms = 0;
  out.converged = true;
  if (t != 0.0) {
    const double c = kind == BoundaryKind::Neumann ? -t : t;
    const double a_w = kind == BoundaryKind::Neumann ? 1.0 : -1.0;
    const double abs_t = std::abs(t);
    const double gap2 = 2.0 * frame.xi_gap;
    const bool mirrored = side == Region::Shell;
    const double a_start = mirrored ? 2.0 * frame.xi_i - p.xi : p.xi;
    const double a_sign = mirrored ? -1.0 : 1.0;

    double coef = 1.0;
    out.converged = false;
    for (std::size_t n = 0; n < cfg.n_max; ++n) {
      coef *= c;
      const double dn = static_cast<double>(n);
      const double xa = a_start + dn * gap2;
      const double xb = p.xi + (dn + 1.0) * gap2;

      const ShiftedGradient A = shifted(frame, Ht, xa, p.theta);
      const ShiftedGradient B = shifted(frame, Ht, xb, p.theta);
      const double ra = scale_ratio(p.xi, xa, p.theta);
      const double rb = scale_ratio(p.xi, xb, p.theta);
      value += coef * (a_w * A.value + B.value);
      g_xi += coef * (a_w * a_sign * ra * A.along_xi + rb * B.along_xi);
      g_theta += coef * (a_w * ra * A.along_theta + rb * B.along_theta);
      out.terms = n + 1;

      // Terms m > n are bounded by 2 |tau|^{m+1} sup|grad H| h(xi)/h(xi'_min).
      const double next_min = std::min(xa, xb) + gap2;
      const double tail = 2.0 * scale_ratio(p.xi, next_min, p.theta) * abs_t * std::abs(coef) /
                          (1.0 - abs_t);
      if (tail < cfg.tol) {
        out.converged = true;
        break;
      }
    }
  }

  const LocalBasis b = basis_vectors(frame, p);
  const Vec2 grad = g_xi * b.e_xi + g_theta * b.e_theta;
  const std::size_t terms = out.terms;
  const bool converged = out.converged;
  out = make_sample(frame, p, value, grad);
  out.terms = terms;
  out.converged = converged;
  return out;
}

// -grad H~ . e_xi at (xi', theta): the normal derivative on the level circle xi'.
double outward_normal_derivative(const BipolarFrame& frame, const HarmonicDiskField& Ht,
                                 double xi, double theta) {
  return -shifted(frame, Ht, xi, theta).along_xi;
}

double density_with_field(const BipolarFrame& frame, double t, const HarmonicDiskField& Ht,
                          DensitySide side, double theta, const ReflectionSeriesConfig& cfg) {
  const double gap2 = 2.0 * frame.xi_gap;
  const double abs_t = std::abs(t);
  double sum = 0.0;
  double base_xi = 0.0;
  double first = 0.0;  // xi of the n = 0 term
  if (side == DensitySide::Inner) {
    base_xi = frame.xi_i;
    first = frame.xi_i;
  } else {
    base_xi = frame.xi_e;
    first = frame.xi_e + gap2;
    sum = -2.0 * outward_normal_derivative(frame, Ht, frame.xi_e, theta);
  }
  if (t == 0.0) return sum;
  const double lead = 2.0 * t;
  double coef = 1.0;
  for (std::size_t n = 0; n < cfg.n_max; ++n) {
    const double xi_n = first + static_cast<double>(n) * gap2;
    sum += lead * coef * scale_ratio(base_xi, xi_n, theta) *
           outward_normal_derivative(frame, Ht, xi_n, theta);
    coef *= -t;
    const double tail =
        2.0 * abs_t * std::abs(coef) * scale_ratio(base_xi, xi_n + gap2, theta) / (1.0 - abs_t);
    if (tail < cfg.tol) break;
  }
  return sum;
}

}  // namespace

void ReflectionSeriesConfig::validate() const {
  if (!(tol > 0.0)) throw DomainError("reflection tolerance must be positive");
  if (n_max < 1) throw DomainError("reflection term cap must be at least 1");
}

double ReflectionLadder::xi_i(std::size_t n) const {
  return 2.0 * static_cast<double>(n) * frame_.xi_gap + frame_.xi_i;
}

double ReflectionLadder::xi_e(std::size_t n) const {
  return 2.0 * static_cast<double>(n) * frame_.xi_gap + frame_.xi_e;
}

GradientSample solve_u_reflection(const BipolarFrame& frame, double k, const HarmonicDiskField& H,
                                  BipolarPoint p, const ReflectionSeriesConfig& cfg,
                                  Region region) {
  return reflection_sum(frame, k, H, p, cfg, region, BoundaryKind::Neumann);
}

GradientSample solve_v_reflection(const BipolarFrame& frame, double k,
                                  const HarmonicDiskField& H_d, BipolarPoint p,
                                  const ReflectionSeriesConfig& cfg, Region region) {
  return reflection_sum(frame, k, H_d, p, cfg, region, BoundaryKind::Dirichlet);
}

double density_series(const BipolarFrame& frame, double k, const HarmonicDiskField& H,
                      DensitySide side, double theta, const ReflectionSeriesConfig& cfg) {
  cfg.validate();
  return density_with_field(frame, tau(k), translated_field(frame, H), side, theta, cfg);
}

LayerPotentialValue single_layer_reconstruction(const BipolarFrame& frame, double k,
                                                const HarmonicDiskField& H, CartesianPoint x,
                                                std::size_t points,
                                                const ReflectionSeriesConfig& cfg) {
  cfg.validate();
  if (points < 8) throw DomainError("layer quadrature needs at least 8 points");
  const double t = tau(k);
  const HarmonicDiskField Ht = translated_field(frame, H);
  LayerPotentialValue out;
  const double dtheta = 2.0 * kPi / static_cast<double>(points);
  for (const DensitySide side : {DensitySide::Inner, DensitySide::Outer}) {
    const double xi = side == DensitySide::Inner ? frame.xi_i : frame.xi_e;
    for (std::size_t j = 0; j < points; ++j) {
      const BipolarPoint q{xi, normalize_angle(dtheta * static_cast<double>(j))};
      const CartesianPoint zeta = to_cartesian(frame, q);
      const double phi = density_with_field(frame, t, Ht, side, q.theta, cfg);
      const double ds = dtheta / scale_factor(frame, q);
      const double dx = x.x1 - zeta.x1;
      const double dy = x.x2 - zeta.x2;
      const double r2 = dx * dx + dy * dy;
      if (r2 == 0.0) throw DomainError("layer potential evaluated on its boundary node");
      const double w = phi * ds / (2.0 * kPi);
      out.value += 0.5 * std::log(r2) * w;
      out.grad += (w / r2) * Vec2{dx, dy};
    }
  }
  return out;
}

double disk_layer_identity_check(const HarmonicDiskField& v, CartesianPoint x, std::size_t m) {
  if (m < 8) throw DomainError("layer quadrature needs at least 8 points");
  const CartesianPoint c = v.center();
  const double R = v.radius();
  const double dt = 2.0 * kPi / static_cast<double>(m);
  double layer = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double t = dt * static_cast<double>(j);
    const Vec2 n{std::cos(t), std::sin(t)};
    const CartesianPoint zeta{c.x1 + R * n.x1, c.x2 + R * n.x2};
    const double dvdn = dot(v.gradient_unchecked(zeta), n);
    const double r = std::hypot(x.x1 - zeta.x1, x.x2 - zeta.x2);
    if (r == 0.0) throw DomainError("layer identity evaluated on the circle");
    layer += std::log(r) * dvdn * R * dt;
  }
  layer /= 2.0 * kPi;

  const double dx = x.x1 - c.x1;
  const double dy = x.x2 - c.x2;
  const double rho2 = dx * dx + dy * dy;
  const double center_value = v.constant();
  double closed = 0.0;
  if (rho2 < R * R) {
    closed = -0.5 * v.value_unchecked(x) + 0.5 * center_value;
  } else {
    const double s = R * R / rho2;
    const CartesianPoint mirror{c.x1 + s * dx, c.x2 + s * dy};
    closed = -0.5 * v.value_unchecked(mirror) + 0.5 * center_value;
  }
  return layer - closed;
}

}  // namespace gapgrad
