#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gapgrad/asymptotics.hpp"
#include "gapgrad/spectral.hpp"
#include "support.hpp"

using namespace gapgrad;
using gapgrad::test::kPi;

TEST_CASE("zero drivers give zero asymptotics") {
  const BipolarFrame f = test::reference_frame();
  const BipolarPoint shell{0.1, 0.2};
  const DirectionalGradient v = grad_v_asymptotic(f, 2.0, {0.0, 0.0}, shell);
  CHECK(norm(v.grad) == 0.0);
  const DirectionalGradient u = grad_u_asymptotic(f, 0.5, {0.0, 0.0}, {0.4, 0.2});
  CHECK(norm(u.grad) == 0.0);
  const CartesianPoint x{1.0, 0.5};
  for (ImagePotential w : {ImagePotential::VStar, ImagePotential::VStarTilde,
                           ImagePotential::UStar, ImagePotential::UStarTilde}) {
    const PotentialValue pv = image_potential(f, 2.0, {0.0, 0.0}, w, x);
    CHECK(pv.value == 0.0);
    CHECK(norm(pv.grad) == 0.0);
  }
}

TEST_CASE("asymptotic formula domains") {
  const BipolarFrame f = test::reference_frame();
  CHECK_THROWS_AS(grad_v_asymptotic(f, 0.5, {1.0, 0.0}, {0.1, 0.2}), DomainError);
  CHECK_THROWS_AS(grad_v_asymptotic(f, 2.0, {1.0, 0.0}, {0.6, 0.2}), DomainError);
  CHECK_THROWS_AS(grad_u_asymptotic(f, 2.0, {1.0, 0.0}, {0.1, 0.2}), DomainError);
  CHECK_NOTHROW(grad_v_asymptotic(f, 2.0, {1.0, 0.0}, {f.xi_i, 0.2}));
}

TEST_CASE("the leading term points along e_xi with the printed magnitude") {
  const BipolarFrame f = test::reference_frame();
  const double k = 2.0;
  const BipolarPoint p{0.12, 0.3};
  const DirectionalGradient v = grad_v_asymptotic(f, k, {0.2, 0.1}, p);
  CHECK(std::abs(v.along_theta) < 1e-15);
  const Complex P = kernel_P(std::exp(Complex{-(2 * f.xi_i - p.xi), -p.theta}), beta(f, k));
  const double F = f.r_star * tau(k) / std::sqrt(f.geometry.eps) * (std::cosh(p.xi) + std::cos(p.theta));
  CHECK(std::abs(v.along_xi - F * (0.2 * P.real() + 0.1 * P.imag())) < 1e-13);

  const DirectionalGradient u = grad_u_asymptotic(f, 0.5, {1.0, 0.0}, p);
  CHECK(u.along_xi == 0.0);
}

TEST_CASE("the two shell variants differ by a bounded amount") {
  // One constant fitted at eps = 1/204800 (gap about 0.58) with headroom; the
  // peak itself grows without bound, so the relative gap must shrink.
  const double fitted = 1.0;
  double last_rel = 1e300;
  for (double eps : {1.0 / 50.0, 1.0 / 3200.0, 1.0 / 204800.0, 1e-7}) {
    const BipolarFrame f = derive_frame({2.0, 5.0, eps});
    const double k = std::sqrt(0.08 / eps);
    double worst = 0.0, peak = 0.0;
    for (int i = 0; i < 50; ++i) {
      const BipolarPoint p{f.xi_e + f.xi_gap * (i % 10 + 0.5) / 10.0, -kPi + 2.0 * kPi * (i + 0.5) / 50.0};
      const double a = grad_v_asymptotic(f, k, {0.2, 0.0}, p).along_xi;
      const double b = grad_v_asymptotic(f, k, {0.2, 0.0}, p, AsymptoticVariant::Alternative).along_xi;
      worst = std::max(worst, std::abs(a - b));
      peak = std::max(peak, std::abs(a));
    }
    CHECK(worst <= fitted);
    CHECK(worst / peak < last_rel);
    last_rel = worst / peak;
  }
}

TEST_CASE("singular e_theta part is continuous across the inclusion boundary") {
  for (double eps : {1.0 / 3200.0, 1.0 / 204800.0}) {
    const BipolarFrame f = derive_frame({2.0, 5.0, eps});
    const double k = std::sqrt(2.0 * eps);
    for (int j = 0; j < 32; ++j) {
      const BipolarPoint p{f.xi_i, -kPi + 2.0 * kPi * (j + 0.5) / 32.0};
      const double a = singular_gradient_u(f, k, {1.0, 0.0}, p, Region::Shell).along_theta;
      const double b = singular_gradient_u(f, k, {1.0, 0.0}, p, Region::Core).along_theta;
      CHECK(std::abs(a - b) <= 1e-8 * (1.0 + std::abs(a)));
    }
  }
}

TEST_CASE("image densities") {
  const BipolarFrame f = test::reference_frame();
  for (double b : {0.4, 1.0, 3.0}) {
    const ImageChargeSystem plus(f, b, ImageSide::Plus);
    const ImageChargeSystem minus(f, b, ImageSide::Minus);
    CHECK(plus.endpoint_singular() == (b < 1.0));
    CHECK(std::abs(plus.density(f.c_i).psi - 1.0) < 1e-14);
    // psi+ vanishes at alpha like (s - alpha)^beta.
    for (double step : {1e-12, 1e-9, 1e-6}) {
      const double s = f.alpha + step, d = s - f.alpha;
      const double expected = std::exp(2.0 * b * f.xi_i) * std::pow(d / (2.0 * f.alpha + d), b);
      CHECK(std::abs(plus.density(s).psi - expected) <= 1e-6 * expected);
    }
    for (int j = 1; j < 20; ++j) {
      const double s = f.alpha + (f.c_i - f.alpha) * j / 20.0;
      CHECK(plus.density(s).phi > 0.0);
      CHECK(minus.density(-s).phi < 0.0);
      CHECK(std::abs(minus.density(-s).phi + plus.density(s).phi) < 1e-14 * plus.density(s).phi);
    }
    CHECK(std::abs(plus.total_phi() - 1.0) <= 1e-8);
    CHECK_THROWS_AS(plus.density(f.c_i + 0.1), DomainError);
    CHECK_THROWS_AS(plus.density(-1.0), DomainError);
    CHECK_THROWS_AS(plus.integrals({1.0, 0.0}), DomainError);
  }
  const ImageChargeSystem one(f, 1.0, ImageSide::Plus);
  for (double s : {0.5, 1.0, 2.0}) {
    const double expected = 2.0 * f.alpha * std::exp(2.0 * f.xi_i) / ((s + f.alpha) * (s + f.alpha));
    CHECK(std::abs(image_density(one, s).phi - expected) < 1e-13 * expected);
  }
}

TEST_CASE("image potential gradients match finite differences") {
  const BipolarFrame f = test::reference_frame();
  const double h = 1e-6;
  for (ImagePotential w : {ImagePotential::VStar, ImagePotential::UStar}) {
    for (const CartesianPoint x : {CartesianPoint{0.5, 0.3}, CartesianPoint{3.0, -1.0}}) {
      const PotentialValue c = image_potential(f, 2.0, {0.3, 0.7}, w, x);
      const double dx = (image_potential(f, 2.0, {0.3, 0.7}, w, {x.x1 + h, x.x2}).value -
                         image_potential(f, 2.0, {0.3, 0.7}, w, {x.x1 - h, x.x2}).value) / (2 * h);
      const double dy = (image_potential(f, 2.0, {0.3, 0.7}, w, {x.x1, x.x2 + h}).value -
                         image_potential(f, 2.0, {0.3, 0.7}, w, {x.x1, x.x2 - h}).value) / (2 * h);
      CHECK(std::abs(c.grad.x1 - dx) < 1e-6 * (1.0 + std::abs(dx)));
      CHECK(std::abs(c.grad.x2 - dy) < 1e-6 * (1.0 + std::abs(dy)));
    }
  }
}

TEST_CASE("Lerch minus image remainder stays below 1/r_i") {
  const BipolarFrame f = test::reference_frame();
  for (double b : {1.0, beta(f, 2.0)}) {
    for (int i = 0; i < 50; ++i) {
      const double xi = f.xi_e + f.xi_gap * (0.02 + 0.96 * ((i * 7) % 50) / 49.0);
      const double th = -3.1 + 6.2 * i / 49.0;
      CHECK(lerch_image_remainder(f, b, {xi, th}, ImageSide::Plus) <= 1.0 / f.geometry.r_i);
    }
  }
}

TEST_CASE("blow-up classification") {
  CHECK(classify_blow_up({false, false, false, false}) != "unmatched");
  CHECK(classify_blow_up({false, false, true, false}) != "unmatched");
  CHECK(classify_blow_up({true, true, false, true}) != "unmatched");
  CHECK(classify_blow_up({true, false, true, false}) == "unmatched");
  CHECK(classify_blow_up({false, false, true, false}) != classify_blow_up({true, true, false, true}));
}

TEST_CASE("rate sweep input checks") {
  SweepSpec one;
  one.cases = {{1.0 / 50.0, 2.0}};
  CHECK_THROWS_AS(rate_sweep(one), DomainError);
  SweepSpec rising;
  rising.cases = {{1.0 / 3200.0, 16.0}, {1.0 / 50.0, 2.0}};
  CHECK_THROWS_AS(rate_sweep(rising), DomainError);
}

TEST_CASE("a decaying norm is bounded, not blowing up") {
  SweepSpec spec;
  spec.cases = {{1.0 / 50.0, 2.0}, {1.0 / 800.0, 8.0}};
  spec.cos_coeffs = {1.0, 0.5};
  spec.min_samples = 256;
  const BlowUpReport r = rate_sweep(spec);
  for (std::size_t c = 0; c < 4; ++c) {
    CHECK(r.rise[c] < 2.0);
    CHECK_FALSE(r.blows_up[c]);
  }
  CHECK(r.variation[0] > 2.0);
  CHECK(r.table_row == classify_blow_up({false, false, false, false}));
}

TEST_CASE("Dirichlet peak follows 1/(1/k + sqrt(eps)) with one constant") {
  SweepSpec spec;
  for (double e : {1.0 / 50.0, 1.0 / 3200.0, 1.0 / 204800.0}) spec.cases.push_back({e, std::sqrt(0.08 / e)});
  const BlowUpReport r = rate_sweep(spec);
  std::vector<double> ratio;
  for (const SweepRecord& rec : r.records) {
    const double scale = (std::abs(rec.drivers.c1) + std::abs(rec.drivers.c2)) /
                         (1.0 / rec.point.k + std::sqrt(rec.point.eps));
    ratio.push_back(rec.norms.shell_xi / scale);
  }
  const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
  CHECK(*hi / *lo < 1.1);
  CHECK(r.table_row == classify_blow_up({false, false, true, false}));
  CHECK(std::abs(r.fits[2].slope + 0.5) < 0.05);
}

TEST_CASE("Dirichlet argmax on the inclusion boundary matches the asymptotic trace") {
  // Leading-order statement, so checked at the small end of the Dirichlet sweep.
  const BipolarFrame f = derive_frame({2.0, 5.0, 1.0 / 204800.0});
  const double k = 128.0;
  const HarmonicDiskField H =
      harmonic_extension(FourierBoundaryData(BoundaryKind::Dirichlet, 5.0, {0.6}, {0.8}));
  const BlowUpDrivers c = extract_C1C2(H);
  const BipolarModeSolution sol = solve_modes(f, k, H, BoundaryKind::Dirichlet);
  const std::vector<GradientSample> line = eval_mode_line(sol, f.xi_i, Region::Shell, 1024);
  std::size_t exact = 0, asym = 0;
  double best_e = -1.0, best_a = -1.0;
  for (std::size_t j = 0; j < line.size(); ++j) {
    const double e = std::abs(line[j].grad_xi);
    const double a = std::abs(grad_v_asymptotic(f, k, c, line[j].bipolar).along_xi);
    if (e > best_e) best_e = e, exact = j;
    if (a > best_a) best_a = a, asym = j;
  }
  const double spacing = 2.0 * kPi / static_cast<double>(line.size());
  CHECK(std::abs(normalize_angle(line[exact].bipolar.theta - line[asym].bipolar.theta)) <=
        spacing + 1e-12);
}
