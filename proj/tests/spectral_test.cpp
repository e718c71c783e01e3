#include <cmath>

#include "doctest.h"
#include "gapgrad/contrast.hpp"
#include "gapgrad/reflection.hpp"
#include "gapgrad/spectral.hpp"
#include "support.hpp"

using namespace gapgrad;
using gapgrad::test::kPi;

namespace {

HarmonicDiskField data(BoundaryKind kind, std::vector<double> a, std::vector<double> b = {}) {
  return harmonic_extension(FourierBoundaryData(kind, 5.0, std::move(a), std::move(b)));
}

}  // namespace

TEST_CASE("linear bipolar expansion") {
  const BipolarFrame f = test::reference_frame();
  const LinearBipolarExpansion e = linear_bipolar_expansion(f, 64);
  const CartesianPoint x = to_cartesian(f, {1.0, 0.0});
  CHECK(std::abs(e.x1({1.0, 0.0}) - x.x1) < 1e-10);
  const CartesianPoint y = to_cartesian(f, {0.7, 2.1});
  CHECK(std::abs(e.x1({0.7, 2.1}) - y.x1) < 1e-10);
  CHECK(std::abs(e.x2({0.7, 2.1}) - y.x2) < 1e-10);
  for (double xi : {0.3, 1.0, 4.0}) CHECK(e.x2({xi, 0.0}) == 0.0);
  CHECK(std::abs(e.x1({60.0, 0.4}) - f.alpha) < 1e-15);
}

TEST_CASE("k = 1 leaves only the background field") {
  const BipolarFrame f = test::reference_frame();
  const HarmonicDiskField H = data(BoundaryKind::Dirichlet, {1.0, 0.5}, {0.3});
  const HarmonicDiskField Ht = H.translated(f.x_0);
  for (BoundaryKind kind : {BoundaryKind::Neumann, BoundaryKind::Dirichlet}) {
    const BipolarModeSolution sol = solve_modes(f, 1.0, H, kind);
    CHECK(sol.tau() == 0.0);
    for (std::size_t n = 0; n < sol.mode_count(); ++n) {
      CHECK(std::abs(sol.shell_growing()[n]) == 0.0);
      CHECK(std::abs(sol.shell_decaying()[n]) == 0.0);
      CHECK(std::abs(sol.core()[n]) == 0.0);
    }
    for (const BipolarPoint p : test::random_interior(f, 30, 2)) {
      const GradientSample s = eval_mode_solution(sol, p);
      CHECK(norm(s.grad - Ht.gradient_unchecked(to_cartesian(f, p))) <= 1e-12);
    }
  }
}

TEST_CASE("closed-form coefficients for linear data") {
  const BipolarFrame f = test::reference_frame();
  // H~ = x1 in the translated frame.
  const HarmonicDiskField H({5.0, 0.0}, 5.0, {Complex{5.0, 0.0}}, 5.0);
  for (BoundaryKind kind : {BoundaryKind::Dirichlet, BoundaryKind::Neumann}) {
    for (double k : {2.0, 0.5}) {
      const BipolarModeSolution sol = solve_modes(f, k, H, kind);
      double worst = 0.0;
      for (std::size_t n = 1; n <= 64; ++n) {
        const ClosedFormCoefficients cf = closed_form_coefficients(f, tau(k), n, kind);
        const NormalizedModeCoefficients pc = sol.normalized_coefficients(n);
        const double A = pc.p.real() * std::exp(2.0 * static_cast<double>(n) * f.xi_i);
        worst = std::max({worst, std::abs(A - cf.A), std::abs(pc.q.real() - cf.B),
                          std::abs(pc.s.real() - cf.A - cf.B), std::abs(pc.p.imag()),
                          std::abs(pc.q.imag()), std::abs(pc.s.imag())});
      }
      CHECK(worst <= 1e-10);
    }
  }
  // Dirichlet n = 1 by hand: A_1 = 2 alpha tau / (1 - tau E).
  const double t = tau(2.0);
  const double E = std::exp(-2.0 * f.xi_gap);
  const ClosedFormCoefficients c1 = closed_form_coefficients(f, t, 1, BoundaryKind::Dirichlet);
  CHECK(std::abs(c1.A - 2.0 * f.alpha * t / (1.0 - t * E)) < 1e-15);
  CHECK(std::abs(c1.B + 2.0 * f.alpha * t * E / (1.0 - t * E)) < 1e-15);
}

TEST_CASE("transmission and outer boundary residuals") {
  const BipolarFrame f = derive_frame({2.0, 5.0, 1.0 / 8.0});
  for (BoundaryKind kind : {BoundaryKind::Neumann, BoundaryKind::Dirichlet}) {
    const HarmonicDiskField H = data(kind, {1.0, 0.5}, {0.0, -0.4, 0.2});
    const HarmonicDiskField Ht = H.translated(f.x_0);
    for (double k : {1.0 / 8.0, 8.0}) {
      const BipolarModeSolution sol = solve_modes(f, k, H, kind);
      const double scale = H.gradient_bound();
      double jump = 0.0, flux = 0.0, outer = 0.0;
      for (int j = 0; j < 256; ++j) {
        const double th = -kPi + 2.0 * kPi * (j + 0.5) / 256.0;
        const GradientSample s = eval_mode_solution(sol, {f.xi_i, th}, Region::Shell);
        const GradientSample c = eval_mode_solution(sol, {f.xi_i, th}, Region::Core);
        jump = std::max(jump, std::abs(s.value - c.value));
        flux = std::max(flux, std::abs(s.grad_xi - k * c.grad_xi));
        const BipolarPoint pe{f.xi_e, th};
        const GradientSample e = eval_mode_solution(sol, pe);
        const CartesianPoint xe = to_cartesian(f, pe);
        if (kind == BoundaryKind::Dirichlet) {
          outer = std::max(outer, std::abs(e.value - Ht.value_unchecked(xe)));
        } else {
          const Vec2 g = Ht.gradient_unchecked(xe);
          outer = std::max(outer, std::abs(e.grad_xi - dot(g, basis_vectors(f, pe).e_xi)));
        }
      }
      CHECK(jump <= 1e-9 * scale);
      CHECK(flux <= 1e-9 * scale);
      CHECK(outer <= 1e-9 * scale);
      if (kind == BoundaryKind::Neumann) CHECK(std::abs(sol.mean_datum()) <= 1e-12);
      CHECK(sol.truncation_estimate() < 1e-10);
    }
  }
}

TEST_CASE("outer trace anchor on the inclusion boundary") {
  const BipolarFrame f = test::reference_frame();
  const HarmonicDiskField H = data(BoundaryKind::Dirichlet, {1.0});
  const BipolarModeSolution sol = solve_modes(f, 2.0, H, BoundaryKind::Dirichlet);
  const GradientSample s = eval_mode_solution(sol, {f.xi_i, kPi / 2.0}, Region::Shell);
  // Cross-checked against the reflection series.
  CHECK(std::abs(s.value + 0.98263151769191) < 1e-11);
  CHECK(std::abs(s.grad.x1 - 0.370599146282444) < 1e-11);
  CHECK(std::abs(s.grad.x2 + 0.0166414920703809) < 1e-11);
}

TEST_CASE("a single growing mode differentiates like h e^xi (cos, -sin)") {
  // Mode n = 1 with P_1 = 1: w = e^{xi - xi_i} cos theta in the shell.
  const BipolarFrame f = test::reference_frame();
  const BipolarPoint p{0.12, 0.8};
  const double h = scale_factor(f, p);
  const double wx = std::exp(p.xi - f.xi_i) * std::cos(p.theta);
  const double wt = -std::exp(p.xi - f.xi_i) * std::sin(p.theta);
  const Vec2 g = gradient_from_partials(f, p, wx, wt);
  const LocalBasis b = basis_vectors(f, p);
  CHECK(std::abs(dot(g, b.e_xi) - h * wx) < 1e-14);
  CHECK(std::abs(dot(g, b.e_theta) - h * wt) < 1e-14);
}

TEST_CASE("mode lines agree with pointwise evaluation") {
  const BipolarFrame f = derive_frame({2.0, 5.0, 1.0 / 8.0});
  const HarmonicDiskField H = data(BoundaryKind::Neumann, {1.0}, {0.5});
  const BipolarModeSolution sol = solve_modes(f, 0.25, H, BoundaryKind::Neumann);
  for (const auto& [xi, region] : {std::pair{f.xi_e, Region::Shell}, std::pair{f.xi_i, Region::Core},
                                   std::pair{0.9, Region::Core}}) {
    const std::vector<GradientSample> line = eval_mode_line(sol, xi, region, 64);
    REQUIRE(line.size() >= 64);
    CHECK((line.size() & (line.size() - 1)) == 0);
    for (std::size_t j = 0; j < line.size(); j += 7) {
      const GradientSample s = eval_mode_solution(sol, line[j].bipolar, region);
      CHECK(norm(s.grad - line[j].grad) < 1e-12);
    }
  }
}

TEST_CASE("solver input errors") {
  const BipolarFrame f = test::reference_frame();
  const HarmonicDiskField H = data(BoundaryKind::Dirichlet, {1.0});
  CHECK_THROWS_AS(solve_modes(f, 0.0, H, BoundaryKind::Dirichlet), DomainError);
  CHECK_THROWS_AS(solve_modes(f, -2.0, H, BoundaryKind::Dirichlet), DomainError);
  const HarmonicDiskField wrong({3.0, 0.0}, 3.0);
  CHECK_THROWS_AS(solve_modes(f, 2.0, wrong, BoundaryKind::Dirichlet), DomainError);
  const BipolarModeSolution sol = solve_modes(f, 2.0, H, BoundaryKind::Dirichlet);
  CHECK_THROWS_AS(eval_mode_solution(sol, {INFINITY, 0.0}), SingularPointError);
}

TEST_CASE("mode count grows as the gap closes") {
  const double t = tau(16.0);
  const std::size_t a = spectral_mode_count(derive_frame({2.0, 5.0, 1.0 / 50.0}), t);
  const std::size_t b = spectral_mode_count(derive_frame({2.0, 5.0, 1.0 / 3200.0}), t);
  CHECK(b > 4 * a);
  SpectralOptions capped;
  capped.max_modes = 100;
  CHECK(spectral_mode_count(derive_frame({2.0, 5.0, 1.0 / 204800.0}), t, capped) == 100);
}
