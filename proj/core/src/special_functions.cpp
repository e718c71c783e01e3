#include "gapgrad/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gapgrad/quadrature.hpp"

namespace gapgrad {

namespace {

constexpr double kMaxModulus = 1.0 - 1e-12;
constexpr double kSeriesCrossover = 0.8;

// In the substituted variable u = (beta + 1) t the integrands decay like e^{-u};
// beyond u = 80 the tail is below e^{-80} / (1 - |z|) < 1e-22.
constexpr double kUpper = 80.0;
const std::vector<double> kBreaks{0.25, 1.0, 4.0, 12.0, 30.0};

// Near |z| = 1 and arg z = pi the integrand peaks on a u-scale of
// (beta + 1)(-ln|z|); extra breakpoints there help the adaptive rule.
std::vector<double> breaks_for(Complex z, double beta) {
  std::vector<double> b = kBreaks;
  const double s = -std::log(std::abs(z)) * (beta + 1.0);
  for (double c : {0.5, 2.0, 8.0}) {
    if (c * s < kBreaks.front()) b.push_back(c * s);
  }
  std::sort(b.begin(), b.end());
  return b;
}

Complex integrate_complex(auto&& f, Complex z, double beta) {
  const auto r = integrate(f, 0.0, kUpper, 1e-17, 1e-14, 20000, breaks_for(z, beta));
  return r.value;
}

}  // namespace

void LerchEvalRequest::validate() const {
  if (!(std::isfinite(z.real()) && std::isfinite(z.imag()))) {
    throw DomainError("Lerch argument is not finite");
  }
  if (std::abs(z) > kMaxModulus) {
    throw DomainError("Lerch argument must satisfy |z| < 1");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("Lerch parameter beta must be positive");
  }
}

Complex lerch_L_series(Complex z, double beta) {
  LerchEvalRequest{z, beta}.validate();
  const double r = std::abs(z);
  if (r == 0.0) return {};
  Complex power = 1.0;
  Complex sum{};
  for (int m = 1; m < 2'000'000; ++m) {
    power *= -z;
    const Complex term = power / (beta + m);
    sum += term;
    if (std::abs(term) <= 1e-18 * (1.0 - r) * std::max(std::abs(sum), 1e-300)) break;
  }
  return sum;
}

Complex kernel_P_series(Complex z, double beta) {
  LerchEvalRequest{z, beta}.validate();
  const double r = std::abs(z);
  if (r == 0.0) return {};
  Complex power = -1.0;
  Complex sum{};
  for (int m = 1; m < 2'000'000; ++m) {
    power *= -z;  // (-1)^{m-1} z^m
    const Complex term = static_cast<double>(m) * power / (beta + m);
    sum += term;
    if (std::abs(term) <= 1e-18 * (1.0 - r) * (1.0 - r) * std::max(std::abs(sum), 1e-300)) {
      break;
    }
  }
  return sum;
}

Complex lerch_L_quadrature(Complex z, double beta) {
  LerchEvalRequest{z, beta}.validate();
  if (z == Complex{}) return {};
  const double b1 = beta + 1.0;
  auto f = [&](double u) -> Complex {
    return z * std::exp(-u) / (1.0 + z * std::exp(-u / b1));
  };
  return -integrate_complex(f, z, beta) / b1;
}

Complex kernel_P_quadrature(Complex z, double beta) {
  LerchEvalRequest{z, beta}.validate();
  if (z == Complex{}) return {};
  const double b1 = beta + 1.0;
  auto f = [&](double u) -> Complex {
    const Complex d = 1.0 + z * std::exp(-u / b1);
    return z * std::exp(-u) / (d * d);
  };
  return integrate_complex(f, z, beta) / b1;
}

Complex lerch_L(Complex z, double beta) {
  return std::abs(z) < kSeriesCrossover ? lerch_L_series(z, beta) : lerch_L_quadrature(z, beta);
}

Complex kernel_P(Complex z, double beta) {
  return std::abs(z) < kSeriesCrossover ? kernel_P_series(z, beta)
                                        : kernel_P_quadrature(z, beta);
}

double P_pointwise_bound(double s, double theta, double beta) {
  return 1.0 / (2.0 * beta * (std::cosh(s) + std::cos(theta)));
}

double P_increment_bound(double s1, double s2, double theta) {
  return (s2 - s1) / (2.0 * (std::cosh(s1) + std::cos(theta)));
}

double P_refined_bound(double s, double theta, double beta) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  const double b1 = beta + 1.0;
  const double c = std::cos(theta);
  // t = u / (beta + 1), as for L and P
  auto f = [&](double u) {
    const double t = u / b1;
    const double a = s + t;
    const double denom = 2.0 * std::cosh(a) + 2.0 * c;
    return std::exp(-beta * t) / denom;
  };
  const auto r = integrate(f, 0.0, kUpper, 1e-18, 1e-13, 20000, kBreaks);
  return r.value / b1;
}

namespace {

void require_inside_outer(const BipolarFrame& frame, BipolarPoint p) {
  if (p.xi < frame.xi_e - 1e-14 * std::max(1.0, frame.xi_e)) {
    throw DomainError("point lies outside the outer disk");
  }
}

Region resolve_branch(const BipolarFrame& frame, BipolarPoint p, Region region) {
  if (region != Region::Auto) return region;
  if (std::abs(p.xi - frame.xi_i) <= 1e-15 * std::max(1.0, frame.xi_i)) {
    throw DomainError("singular function is not defined on the inclusion boundary");
  }
  return p.xi < frame.xi_i ? Region::Shell : Region::Core;
}

Complex unit_arg(double log_modulus, double theta) {
  return std::polar(std::exp(log_modulus), -theta);
}

}  // namespace

ComplexPartials q_d_partials(const BipolarFrame& frame, BipolarPoint p, double beta,
                             Region region) {
  require_inside_outer(frame, p);
  const Region branch = resolve_branch(frame, p, region);
  const double gap2 = 2.0 * frame.xi_gap;
  // L(e^{a xi + b - i theta}) has xi-derivative -a P and theta-derivative i P.
  const Complex z1 = unit_arg(-(gap2 + p.xi), p.theta);
  const Complex l1 = lerch_L(z1, beta);
  const Complex p1 = kernel_P(z1, beta);
  const Complex I{0.0, 1.0};
  if (branch == Region::Shell) {
    const Complex z2 = unit_arg(-(2.0 * frame.xi_i - p.xi), p.theta);
    const Complex p2 = kernel_P(z2, beta);
    return {l1 - lerch_L(z2, beta), p1 + p2, I * (p1 - p2)};
  }
  const Complex z3 = unit_arg(-p.xi, p.theta);
  const Complex p3 = kernel_P(z3, beta);
  return {l1 - lerch_L(z3, beta), p1 - p3, I * (p1 - p3)};
}

ComplexPartials q_u_partials(const BipolarFrame& frame, BipolarPoint p, double beta,
                             Region region) {
  require_inside_outer(frame, p);
  const Region branch = resolve_branch(frame, p, region);
  const double gap2 = 2.0 * frame.xi_gap;
  const Complex z1 = unit_arg(-(p.xi + gap2), p.theta);
  const Complex l1 = lerch_L(z1, beta);
  const Complex p1 = kernel_P(z1, beta);
  const Complex I{0.0, 1.0};
  if (branch == Region::Shell) {
    const Complex z2 = unit_arg(p.xi - 2.0 * frame.xi_i, p.theta);
    const Complex p2 = kernel_P(z2, beta);
    return {-l1 - lerch_L(z2, beta), p2 - p1, -I * (p1 + p2)};
  }
  const Complex z3 = unit_arg(-p.xi, p.theta);
  const Complex p3 = kernel_P(z3, beta);
  return {-l1 - lerch_L(z3, beta), -(p1 + p3), -I * (p1 + p3)};
}

Complex q_d(const BipolarFrame& frame, BipolarPoint p, double beta) {
  return q_d_partials(frame, p, beta, Region::Auto).value;
}

Complex q_u(const BipolarFrame& frame, BipolarPoint p, double beta) {
  return q_u_partials(frame, p, beta, Region::Auto).value;
}

}  // namespace gapgrad
