#include "gapgrad/spectral.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"
#include "gapgrad/contrast.hpp"

namespace gapgrad {

namespace {

constexpr double kPi = std::numbers::pi;

using Row = std::array<Complex, 4>;  // three coefficients and the right-hand side

// Gaussian elimination with partial pivoting on a 3x3 augmented system.
std::array<Complex, 3> solve3(std::array<Row, 3> m) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) == 0.0) throw std::runtime_error("singular mode system");
    std::swap(m[col], m[piv]);
    for (int r = col + 1; r < 3; ++r) {
      const Complex f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::array<Complex, 3> x{};
  for (int r = 2; r >= 0; --r) {
    Complex acc = m[r][3];
    for (int c = r + 1; c < 3; ++c) acc -= m[r][c] * x[c];
    x[r] = acc / m[r][r];
  }
  return x;
}

struct PowerSums {
  Complex plain;     // sum c_n r^n e^{i n theta}
  Complex weighted;  // sum n c_n r^n e^{i n theta}
};

// log_r <= 0. The running power is re-seeded periodically to bound drift.
PowerSums power_sums(const std::vector<Complex>& c, double log_r, double theta) {
  PowerSums s;
  const Complex step = std::polar(std::exp(log_r), theta);
  Complex pw = 1.0;
  for (std::size_t n = 1; n <= c.size(); ++n) {
    const double lr = static_cast<double>(n) * log_r;
    if (lr < -745.0) break;
    pw = (n % 256 == 0) ? std::polar(std::exp(lr), static_cast<double>(n) * theta) : pw * step;
    const Complex t = c[n - 1] * pw;
    s.plain += t;
    s.weighted += static_cast<double>(n) * t;
  }
  return s;
}

struct Partials {
  double value = 0.0;
  double d_xi = 0.0;
  double d_theta = 0.0;
};

Partials scattered_partials(const BipolarModeSolution& sol, BipolarPoint p, Region region) {
  const BipolarFrame& f = sol.frame();
  Partials out;
  if (region == Region::Shell) {
    const PowerSums a = power_sums(sol.shell_growing(), p.xi - f.xi_i, p.theta);
    const PowerSums b = power_sums(sol.shell_decaying(), -(p.xi - f.xi_e), p.theta);
    out.value = (a.plain + b.plain).real() + sol.shell_a0() + sol.shell_b0() * p.xi;
    out.d_xi = (a.weighted - b.weighted).real() + sol.shell_b0();
    out.d_theta = -(a.weighted + b.weighted).imag();
  } else {
    const PowerSums c = power_sums(sol.core(), -(p.xi - f.xi_i), p.theta);
    out.value = c.plain.real() + sol.core_c0();
    out.d_xi = -c.weighted.real();
    out.d_theta = -c.weighted.imag();
  }
  return out;
}

GradientSample total_sample(const BipolarModeSolution& sol, BipolarPoint p, const Partials& w) {
  const BipolarFrame& f = sol.frame();
  const CartesianPoint x = to_cartesian(f, p);
  const Vec2 grad = sol.background().gradient_unchecked(x) +
                    gradient_from_partials(f, p, w.d_xi, w.d_theta);
  return make_sample(f, p, sol.background().value_unchecked(x) + w.value, grad);
}

}  // namespace

double LinearBipolarExpansion::x1(BipolarPoint p) const {
  double s = x1_constant;
  for (std::size_t n = 1; n <= x1_cos.size(); ++n) {
    s += x1_cos[n - 1] * std::exp(-static_cast<double>(n) * p.xi) * std::cos(n * p.theta);
  }
  return s;
}

double LinearBipolarExpansion::x2(BipolarPoint p) const {
  double s = 0.0;
  for (std::size_t n = 1; n <= x2_sin.size(); ++n) {
    s += x2_sin[n - 1] * std::exp(-static_cast<double>(n) * p.xi) * std::sin(n * p.theta);
  }
  return s;
}

LinearBipolarExpansion linear_bipolar_expansion(const BipolarFrame& frame, std::size_t n_modes) {
  LinearBipolarExpansion e;
  e.x1_constant = frame.alpha;
  e.x1_cos.resize(n_modes);
  e.x2_sin.resize(n_modes);
  for (std::size_t n = 1; n <= n_modes; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    e.x1_cos[n - 1] = 2.0 * frame.alpha * sign;
    e.x2_sin[n - 1] = -2.0 * frame.alpha * sign;
  }
  return e;
}

NormalizedModeCoefficients BipolarModeSolution::normalized_coefficients(std::size_t n) const {
  if (n == 0 || n > P_.size()) throw DomainError("mode index out of range");
  const double dn = static_cast<double>(n);
  return {P_[n - 1] * std::exp(-dn * frame_.xi_i), K_[n - 1] * std::exp(dn * frame_.xi_e),
          S_[n - 1] * std::exp(dn * frame_.xi_i)};
}

std::size_t spectral_mode_count(const BipolarFrame& frame, double tau_value,
                                const SpectralOptions& options) {
  const double t = std::abs(tau_value);
  std::size_t n = options.min_modes;
  if (t > 0.0) {
    const double need = std::ceil(std::log(t / options.mode_tol) / frame.xi_gap);
    if (need > static_cast<double>(n)) {
      n = need >= static_cast<double>(options.max_modes) ? options.max_modes
                                                          : static_cast<std::size_t>(need);
    }
  }
  return std::min(n, options.max_modes);
}

BipolarModeSolution solve_modes(const BipolarFrame& frame, double k, const HarmonicDiskField& field,
                                BoundaryKind kind, const SpectralOptions& options) {
  const double t = tau(k);
  const double re = frame.geometry.r_e;
  if (std::abs(field.radius() - re) > 1e-12 * re ||
      std::abs(field.center().x1 - re) > 1e-12 * re || field.center().x2 != 0.0) {
    throw DomainError("background field must live on the un-translated outer disk");
  }

  BipolarModeSolution sol(frame, field.translated(frame.x_0));
  sol.k_ = k;
  sol.tau_ = t;
  sol.kind_ = kind;

  const std::size_t n_modes = spectral_mode_count(frame, t, options);
  const std::size_t m = std::bit_ceil(std::max<std::size_t>(4 * n_modes, 64));
  sol.samples_ = m;

  // d H~ / d xi on the inclusion boundary.
  std::vector<double> datum(m);
  for (std::size_t j = 0; j < m; ++j) {
    const BipolarPoint p{frame.xi_i, normalize_angle(2.0 * kPi * j / m)};
    const CartesianPoint x = to_cartesian(frame, p);
    const LocalBasis b = basis_vectors(frame, p);
    datum[j] = dot(sol.background_.gradient_unchecked(x), b.e_xi) / scale_factor(frame, p);
  }
  detail::RealFft fft(m);
  const std::vector<Complex> d = fft.analyze(datum);

  sol.P_.resize(n_modes);
  sol.K_.resize(n_modes);
  sol.S_.resize(n_modes);
  const double outer_sign = kind == BoundaryKind::Dirichlet ? 1.0 : -1.0;
  double biggest = 0.0;
  for (std::size_t n = 1; n <= n_modes; ++n) {
    const double dn = static_cast<double>(n);
    const double half = std::exp(-dn * frame.xi_gap);  // e^{-n (xi_i - xi_e)}
    // Unknowns (P, Q, S) with Q the shell decaying coefficient relative to xi_i:
    //   P + Q - S = 0,  P - Q + k S = (k - 1) D_n / n,  E P +- Q = 0.
    const std::array<Row, 3> rows{{{1.0, 1.0, -1.0, 0.0},
                                   {1.0, -1.0, k, (k - 1.0) * d[n] / dn},
                                   {half * half, outer_sign, 0.0, 0.0}}};
    const auto x = solve3(rows);
    sol.P_[n - 1] = x[0];
    // Q e^{n (xi_i - xi_e)} from the outer row, without forming e^{+n gap}.
    sol.K_[n - 1] = -outer_sign * half * x[0];
    sol.S_[n - 1] = x[2];
    biggest = std::max({biggest, std::abs(x[0]), std::abs(x[2])});
  }

  sol.mean_datum_ = d[0].real();
  if (kind == BoundaryKind::Dirichlet) {
    sol.b0_ = (k - 1.0) * sol.mean_datum_;
    sol.a0_ = -sol.b0_ * frame.xi_e;
    sol.c0_ = sol.a0_ + sol.b0_ * frame.xi_i;
  }
  // Neumann: b0 = 0 by the outer condition and a0 = 0 fixes the free constant
  // (zero mean of w on the outer circle).

  if (biggest > 0.0) {
    const std::size_t last = n_modes - 1;
    sol.truncation_estimate_ =
        std::max({std::abs(sol.P_[last]), std::abs(sol.K_[last]), std::abs(sol.S_[last])}) /
        biggest;
  }
  return sol;
}

GradientSample eval_mode_solution(const BipolarModeSolution& sol, BipolarPoint p, Region region) {
  const Region r = resolve_region(sol.frame(), p.xi, region);
  return total_sample(sol, p, scattered_partials(sol, p, r));
}

std::vector<GradientSample> eval_mode_line(const BipolarModeSolution& sol, double xi,
                                           Region region, std::size_t min_samples) {
  const BipolarFrame& f = sol.frame();
  const Region r = resolve_region(f, xi, region);
  const std::size_t n_modes = sol.mode_count();
  const std::size_t m = std::bit_ceil(std::max({min_samples, 2 * n_modes + 2, std::size_t{8}}));

  std::vector<Complex> val(n_modes + 1), dxi(n_modes + 1), dth(n_modes + 1);
  const Complex I{0.0, 1.0};
  for (std::size_t n = 1; n <= n_modes; ++n) {
    const double dn = static_cast<double>(n);
    Complex x{}, xd{};
    if (r == Region::Shell) {
      const Complex grow = sol.shell_growing()[n - 1] * std::exp(dn * (xi - f.xi_i));
      const Complex decay = sol.shell_decaying()[n - 1] * std::exp(-dn * (xi - f.xi_e));
      x = grow + decay;
      xd = dn * (grow - decay);
    } else {
      x = sol.core()[n - 1] * std::exp(-dn * (xi - f.xi_i));
      xd = -dn * x;
    }
    val[n] = x;
    dxi[n] = xd;
    dth[n] = I * dn * x;
  }
  detail::RealFft fft(m);
  const std::vector<double> v = fft.synthesize(val);
  const std::vector<double> vx = fft.synthesize(dxi);
  const std::vector<double> vt = fft.synthesize(dth);

  double v0 = sol.core_c0();
  double vx0 = 0.0;
  if (r == Region::Shell) {
    v0 = sol.shell_a0() + sol.shell_b0() * xi;
    vx0 = sol.shell_b0();
  }

  std::vector<GradientSample> out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const BipolarPoint p{xi, normalize_angle(2.0 * kPi * j / m)};
    out.push_back(total_sample(sol, p, {v[j] + v0, vx[j] + vx0, vt[j]}));
  }
  return out;
}

ClosedFormCoefficients closed_form_coefficients(const BipolarFrame& frame, double tau_value,
                                                std::size_t n, BoundaryKind kind) {
  if (n == 0) throw DomainError("closed-form coefficients start at n = 1");
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  const double e = std::exp(-2.0 * static_cast<double>(n) * frame.xi_gap);
  const double base = -2.0 * frame.alpha * sign * tau_value;
  if (kind == BoundaryKind::Dirichlet) {
    const double den = 1.0 - tau_value * e;
    return {base / den, -base * e / den};
  }
  const double den = 1.0 + tau_value * e;
  return {base / den, base * e / den};
}

}  // namespace gapgrad
