#include "gapgrad/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gapgrad/parallel.hpp"
#include "gapgrad/quadrature.hpp"
#include "gapgrad/spectral.hpp"

namespace gapgrad {

namespace {

DirectionalGradient from_components(const BipolarFrame& frame, BipolarPoint p, double along_xi,
                                    double along_theta) {
  const LocalBasis b = basis_vectors(frame, p);
  return {along_xi * b.e_xi + along_theta * b.e_theta, along_xi, along_theta};
}

double blow_up_factor(const BipolarFrame& frame, double t, BipolarPoint p) {
  return frame.r_star * t / std::sqrt(frame.geometry.eps) * (std::cosh(p.xi) + std::cos(p.theta));
}

Complex lerch_arg(double log_modulus, double theta) {
  return std::polar(std::exp(log_modulus), -theta);
}

DirectionalGradient singular_from_partials(const BipolarFrame& frame, double t, BlowUpDrivers c,
                                           BipolarPoint p, const ComplexPartials& q) {
  const double scale = 0.5 * frame.r_star * frame.r_star * t * scale_factor(frame, p);
  const double along_xi = scale * (c.c1 * q.d_xi.real() + c.c2 * q.d_xi.imag());
  const double along_theta = scale * (c.c1 * q.d_theta.real() + c.c2 * q.d_theta.imag());
  return from_components(frame, p, along_xi, along_theta);
}

// Log-kernel and dipole-kernel values and gradients, packed for vector quadrature.
struct KernelSix {
  std::array<double, 6> v{};

  KernelSix& operator+=(const KernelSix& o) {
    for (std::size_t i = 0; i < 6; ++i) v[i] += o.v[i];
    return *this;
  }
  friend KernelSix operator+(KernelSix a, const KernelSix& b) { return a += b; }
  friend KernelSix operator-(KernelSix a, const KernelSix& b) {
    for (std::size_t i = 0; i < 6; ++i) a.v[i] -= b.v[i];
    return a;
  }
  friend KernelSix operator*(KernelSix a, double s) {
    for (double& x : a.v) x *= s;
    return a;
  }
  double magnitude() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
};


}  // namespace

DirectionalGradient grad_v_asymptotic(const BipolarFrame& frame, double k, BlowUpDrivers c,
                                      BipolarPoint p, AsymptoticVariant variant) {
  if (!(k > 1.0)) throw DomainError("the shell blow-up formula for v needs k > 1");
  resolve_region(frame, p.xi, Region::Shell);
  const double t = tau(k);
  const double b = beta(frame, k);
  const double log_mod = variant == AsymptoticVariant::Primary ? -(2.0 * frame.xi_i - p.xi)
                                                               : -(p.xi + 2.0 * frame.xi_i);
  const Complex P = kernel_P(lerch_arg(log_mod, p.theta), b);
  const double along_xi = blow_up_factor(frame, t, p) * (c.c1 * P.real() + c.c2 * P.imag());
  return from_components(frame, p, along_xi, 0.0);
}

DirectionalGradient grad_u_asymptotic(const BipolarFrame& frame, double k, BlowUpDrivers c,
                                      BipolarPoint p, Region region) {
  if (!(k > 0.0 && k < 1.0)) throw DomainError("the blow-up formula for u needs 0 < k < 1");
  const Region side = resolve_region(frame, p.xi, region);
  const double t = tau(k);
  const double b = beta(frame, k);
  const double f = blow_up_factor(frame, t, p);
  if (side == Region::Core) {
    const Complex P = kernel_P(lerch_arg(-(p.xi + 2.0 * frame.xi_i), p.theta), b);
    return from_components(frame, p, -f * (c.c1 * P.real() + c.c2 * P.imag()),
                           f * (c.c1 * P.imag() - c.c2 * P.real()));
  }
  const Complex P = kernel_P(lerch_arg(-(2.0 * frame.xi_i - p.xi), p.theta), b);
  return from_components(frame, p, 0.0, f * (c.c1 * P.imag() - c.c2 * P.real()));
}

DirectionalGradient singular_gradient_v(const BipolarFrame& frame, double k, BlowUpDrivers c,
                                        BipolarPoint p, Region region) {
  const double b = beta(frame, k);
  return singular_from_partials(frame, tau(k), c, p, q_d_partials(frame, p, b, region));
}

DirectionalGradient singular_gradient_u(const BipolarFrame& frame, double k, BlowUpDrivers c,
                                        BipolarPoint p, Region region) {
  const double b = beta(frame, k);
  return singular_from_partials(frame, tau(k), c, p, q_u_partials(frame, p, b, region));
}

ImageChargeSystem::ImageChargeSystem(const BipolarFrame& frame, double beta, ImageSide side)
    : frame_(frame), beta_(beta), side_(side) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("image density needs beta > 0");
}

std::pair<double, double> ImageChargeSystem::support() const {
  if (side_ == ImageSide::Plus) return {frame_.alpha, frame_.c_i};
  return {-frame_.c_i, -frame_.alpha};
}

ImageDensity ImageChargeSystem::density(double s) const {
  const auto [lo, hi] = support();
  if (!(s > lo && s <= hi)) throw DomainError("image density evaluated outside its support");
  const double a = frame_.alpha;
  const double sp = side_ == ImageSide::Plus ? s : -s;
  const double sign = side_ == ImageSide::Plus ? 1.0 : -1.0;
  // e^{2 beta xi_i} ((s - a) / (s + a))^beta in log form.
  const double log_ratio = 2.0 * beta_ * frame_.xi_i + beta_ * (std::log(sp - a) - std::log(sp + a));
  const double psi = std::exp(log_ratio);
  const double phi = 2.0 * a * beta_ * psi / ((sp - a) * (sp + a));
  return {sign * phi, sign * psi};
}

ImageIntegrals ImageChargeSystem::integrals(CartesianPoint x) const {
  const double a = frame_.alpha;
  const double ci = frame_.c_i;
  const double sigma = side_ == ImageSide::Plus ? 1.0 : -1.0;
  const double lo_abs = a;
  if (std::abs(x.x2) == 0.0 && sigma * x.x1 >= lo_abs && sigma * x.x1 <= ci) {
    throw DomainError("image potential evaluated on the charge support");
  }
  // s' = alpha + (c_i - alpha) e^y on the positive support; the weights below
  // are phi+(s') ds' and psi+(s') ds' with e^{2 beta xi_i}(c_i - alpha)^beta
  // folded into (c_i + alpha)^beta.
  const double log_top = std::log(ci + a);
  const double width = ci - a;
  auto integrand = [&](double y) {
    const double ey = std::exp(y);
    const double sp = a + width * ey;
    const double common = std::exp(beta_ * (y + log_top - std::log(sp + a)));
    const double w_phi = 2.0 * a * beta_ * common / (sp + a);
    const double w_psi = common * width * ey;
    const double dx = x.x1 - sigma * sp;
    const double dy = x.x2;
    const double r2 = dx * dx + dy * dy;
    const double r4 = r2 * r2;
    KernelSix k;
    k.v[0] = 0.5 * std::log(r2) * w_phi;
    k.v[1] = dx / r2 * w_phi;
    k.v[2] = dy / r2 * w_phi;
    k.v[3] = dy / r2 * w_psi;
    k.v[4] = -2.0 * dy * dx / r4 * w_psi;
    k.v[5] = (dx * dx - dy * dy) / r4 * w_psi;
    return k * sigma;
  };
  const double y0 = std::log(a / width);
  const double y_min =
      -(45.0 + beta_ * std::max(0.0, std::log((ci + a) / (2.0 * a))) + std::abs(std::log(a))) /
      beta_;
  std::vector<double> breaks;
  for (double d : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0}) breaks.push_back(y0 + d);
  const double proj = sigma * x.x1 - a;
  if (proj > 0.0 && proj < width) breaks.push_back(std::log(proj / width));
  breaks.push_back(0.5 * y_min);
  const auto r = integrate(integrand, y_min, 0.0, 1e-14, 1e-12, 8000, breaks);
  ImageIntegrals out;
  out.log_value = r.value.v[0];
  out.log_grad = {r.value.v[1], r.value.v[2]};
  out.dipole_value = r.value.v[3];
  out.dipole_grad = {r.value.v[4], r.value.v[5]};
  return out;
}

double ImageChargeSystem::total_phi() const {
  const double a = frame_.alpha;
  const double ci = frame_.c_i;
  const double log_top = std::log(ci + a);
  const double width = ci - a;
  auto integrand = [&](double y) {
    const double sp = a + width * std::exp(y);
    return 2.0 * a * beta_ * std::exp(beta_ * (y + log_top - std::log(sp + a))) / (sp + a);
  };
  const double y_min =
      -(45.0 + beta_ * std::max(0.0, std::log((ci + a) / (2.0 * a)))) / beta_;
  const double y0 = std::log(a / width);
  const auto r = integrate(integrand, y_min, 0.0, 1e-16, 1e-13, 8000,
                           {y0 - 4.0, y0 - 1.0, y0, y0 + 1.0, 0.5 * y_min});
  return side_ == ImageSide::Plus ? r.value : -r.value;
}

ImageDensity image_density(const ImageChargeSystem& system, double s) { return system.density(s); }

PotentialValue image_potential(const ImageChargeSystem& system, double tau_value, double r_star,
                               BlowUpDrivers c, ImagePotential which, CartesianPoint x) {
  const bool plus = which == ImagePotential::VStar || which == ImagePotential::UStarTilde;
  if (plus != (system.side() == ImageSide::Plus)) {
    throw DomainError("image system side does not match the requested potential");
  }
  const double pref = (which == ImagePotential::UStar ? 1.0 : -1.0) * r_star * r_star * tau_value;
  const ImageIntegrals I = system.integrals(x);
  PotentialValue out;
  out.value = pref * (c.c1 * I.log_value + c.c2 * I.dipole_value);
  out.grad = pref * (c.c1 * I.log_grad + c.c2 * I.dipole_grad);
  return out;
}

PotentialValue image_potential(const BipolarFrame& frame, double k, BlowUpDrivers c,
                               ImagePotential which, CartesianPoint x) {
  const bool plus = which == ImagePotential::VStar || which == ImagePotential::UStarTilde;
  const ImageChargeSystem sys(frame, beta(frame, k), plus ? ImageSide::Plus : ImageSide::Minus);
  return image_potential(sys, tau(k), frame.r_star, c, which, x);
}

double lerch_image_remainder(const BipolarFrame& frame, double beta_value, BipolarPoint p,
                             ImageSide side) {
  if (side == ImageSide::Plus) resolve_region(frame, p.xi, Region::Shell);
  else resolve_region(frame, p.xi, Region::Auto);
  const double h = scale_factor(frame, p);
  const LocalBasis b = basis_vectors(frame, p);
  const bool plus = side == ImageSide::Plus;
  const double log_mod = plus ? -(2.0 * frame.xi_i - p.xi) : -(p.xi + 2.0 * frame.xi_i);
  const Complex P = kernel_P(lerch_arg(log_mod, p.theta), beta_value);
  // L(e^{a xi + b - i theta}): d/dxi = -a P, d/dtheta = i P.
  const Complex d_xi = plus ? -P : P;
  const Complex d_theta = Complex{0.0, 1.0} * P;
  const Vec2 grad_re = h * (d_xi.real() * b.e_xi + d_theta.real() * b.e_theta);
  const Vec2 grad_im = h * (d_xi.imag() * b.e_xi + d_theta.imag() * b.e_theta);

  const ImageChargeSystem sys(frame, beta_value, side);
  const ImageIntegrals I = sys.integrals(to_cartesian(frame, p));
  const double s = plus ? -1.0 : 1.0;
  const Vec2 r_re = grad_re + s * I.log_grad;
  const Vec2 r_im = grad_im + s * I.dipole_grad;
  return std::sqrt(dot(r_re, r_re) + dot(r_im, r_im));
}

std::string classify_blow_up(const std::array<bool, 4>& b) {
  if (b == std::array<bool, 4>{true, true, false, true}) return "u; (C1,C2) != (0,0)";
  if (b == std::array<bool, 4>{false, false, true, false}) return "v; (C1,C2) != (0,0)";
  if (b == std::array<bool, 4>{false, false, false, false}) return "u,v; (C1,C2) = (0,0)";
  return "unmatched";
}

namespace {

RateFit fit_rate(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.half_width = std::numeric_limits<double>::quiet_NaN();
  if (n >= 3) {
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - (my + fit.slope * (x[i] - mx));
      ss += r * r;
    }
    static constexpr std::array<double, 10> t975{12.706, 4.303, 3.182, 2.776, 2.571,
                                                 2.447,  2.365, 2.306, 2.262, 2.228};
    const std::size_t dof = n - 2;
    const double t = dof <= t975.size() ? t975[dof - 1] : 1.96;
    fit.half_width = t * std::sqrt(ss / static_cast<double>(dof) / sxx);
  }
  return fit;
}

constexpr double kCoreDepth = 12.0;

SweepRecord measure_case(const SweepSpec& spec, const SweepCase& c) {
  const BipolarFrame frame = derive_frame({spec.r_i, spec.r_e, c.eps});
  const FourierBoundaryData data(spec.kind, spec.r_e, spec.cos_coeffs, spec.sin_coeffs);
  const HarmonicDiskField H = harmonic_extension(data);
  const BipolarModeSolution sol = solve_modes(frame, c.k, H, spec.kind);

  SweepRecord rec;
  rec.point = c;
  rec.drivers = extract_C1C2(H);
  rec.modes = sol.mode_count();
  rec.truncation_estimate = sol.truncation_estimate();

  auto scan = [&](double xi, Region region, double& along_xi, double& along_theta) {
    const auto line = eval_mode_line(sol, xi, region, spec.min_samples);
    rec.samples_per_line = line.size();
    for (const GradientSample& s : line) {
      along_xi = std::max(along_xi, std::abs(s.grad_xi));
      along_theta = std::max(along_theta, std::abs(s.grad_theta));
    }
  };
  const std::size_t ms = std::max<std::size_t>(spec.shell_lines, 2);
  for (std::size_t j = 0; j < ms; ++j) {
    // Chebyshev spacing clusters the circles at both boundaries.
    const double u = 0.5 * (1.0 - std::cos(3.14159265358979323846 * j / (ms - 1)));
    const double xi = j + 1 == ms ? frame.xi_i : frame.xi_e + frame.xi_gap * u;
    scan(xi, Region::Shell, rec.norms.shell_xi, rec.norms.shell_theta);
  }
  // Geometric from the inclusion boundary to deep inside, where the
  // bipolar basis turns fully around the pole.
  const std::size_t mc = std::max<std::size_t>(spec.core_lines, 2);
  const double ratio = std::max(kCoreDepth / frame.xi_i, 1.0);
  for (std::size_t j = 0; j < mc; ++j) {
    const double xi = frame.xi_i * std::pow(ratio, static_cast<double>(j) / (mc - 1));
    scan(xi, Region::Core, rec.norms.core_xi, rec.norms.core_theta);
  }
  return rec;
}

}  // namespace

BlowUpReport rate_sweep(const SweepSpec& spec) {
  if (spec.cases.size() < 2) throw DomainError("a rate sweep needs at least two cases");
  for (std::size_t i = 1; i < spec.cases.size(); ++i) {
    if (!(spec.cases[i].eps < spec.cases[i - 1].eps)) {
      throw DomainError("sweep eps values must decrease");
    }
  }
  BlowUpReport report;
  report.kind = spec.kind;
  report.records.resize(spec.cases.size());
  parallel_for(spec.cases.size(), spec.threads,
               [&](std::size_t i) { report.records[i] = measure_case(spec, spec.cases[i]); });

  std::vector<double> x;
  for (const auto& r : report.records) x.push_back(std::log(r.point.eps));
  for (std::size_t c = 0; c < 4; ++c) {
    std::vector<double> y;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    double rise = 1.0;
    double running_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < report.records.size(); ++i) {
      const double v = report.records[i].norms.as_array()[c];
      y.push_back(std::log(v));
      rise = std::max(rise, v / running_min);
      running_min = std::min(running_min, v);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      if (i > 0) report.growth[c].push_back(v / report.records[i - 1].norms.as_array()[c]);
    }
    report.fits[c] = fit_rate(x, y);
    report.variation[c] = hi / lo;
    report.rise[c] = rise;
    report.blows_up[c] = rise >= 2.0;
  }
  report.table_row = classify_blow_up(report.blows_up);
  for (const auto& r : report.records) {
    if (r.truncation_estimate > 1e-9) {
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "eps=%.6g: mode cap reached (tail %.2e); use a larger eps or raise max_modes",
                    r.point.eps, r.truncation_estimate);
      report.warnings.emplace_back(buf);
    }
  }
  return report;
}

}  // namespace gapgrad
