// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gapgrad/asymptotics.hpp"
#include "gapgrad/reflection.hpp"
#include "gapgrad/spectral.hpp"
#include "support.hpp"

using namespace gapgrad;
using gapgrad::test::kPi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string list(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt("%.4g", v[i]);
  return s + "]";
}

HarmonicDiskField data(BoundaryKind kind, std::vector<double> a, std::vector<double> b = {}) {
  return harmonic_extension(FourierBoundaryData(kind, 5.0, std::move(a), std::move(b)));
}

GradientSample reflect(const BipolarFrame& f, double k, const HarmonicDiskField& H,
                       BoundaryKind kind, BipolarPoint p) {
  return kind == BoundaryKind::Neumann ? solve_u_reflection(f, k, H, p)
                                       : solve_v_reflection(f, k, H, p);
}

std::vector<SweepCase> dirichlet_sweep() {
  std::vector<SweepCase> c;
  for (double e : {1.0 / 50.0, 1.0 / 3200.0, 1.0 / 204800.0}) c.push_back({e, std::sqrt(0.08 / e)});
  return c;
}

std::vector<SweepCase> neumann_sweep() {
  std::vector<SweepCase> c;
  for (double e : {1.0 / 3200.0, 1.0 / 204800.0}) c.push_back({e, std::sqrt(2.0 * e)});
  return c;
}

Outcome frame_constants() {
  const BipolarFrame f = test::reference_frame();
  const double d = std::max({std::abs(f.alpha - 0.367534), std::abs(f.c_i - 2.033490),
                             std::abs(f.c_e - 5.013490)});
  return {d <= 1e-5, "alpha=" + fmt("%.6f", f.alpha) + " c_i=" + fmt("%.6f", f.c_i) +
                         " c_e=" + fmt("%.6f", f.c_e) + " max dev " + fmt("%.2e", d)};
}

Outcome dual_solver() {
  double worst = 0.0;
  std::size_t configs = 0;
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> sets{
      {{1.0}, {}}, {{}, {1.0}}, {{1.0, 0.5}, {}}};
  unsigned seed = 100;
  for (BoundaryKind kind : {BoundaryKind::Neumann, BoundaryKind::Dirichlet}) {
    for (const auto& [a, b] : sets) {
      const HarmonicDiskField H = data(kind, a, b);
      for (double eps : {1.0 / 8.0, 1.0 / 50.0}) {
        const BipolarFrame f = derive_frame({2.0, 5.0, eps});
        for (double k : {1.0 / 8.0, 2.0, 8.0}) {
          const BipolarModeSolution sol = solve_modes(f, k, H, kind);
          for (const BipolarPoint p : test::random_interior(f, 100, seed++)) {
            worst = std::max(worst, test::rel_diff(eval_mode_solution(sol, p).grad,
                                                   reflect(f, k, H, kind, p).grad,
                                                   H.gradient_bound()));
          }
          ++configs;
        }
      }
    }
  }
  return {worst <= 1e-8, std::to_string(configs) + " configurations x 100 points, max relative gap " +
                             fmt("%.2e", worst)};
}

Outcome k1_degeneracy() {
  double worst = 0.0;
  for (BoundaryKind kind : {BoundaryKind::Neumann, BoundaryKind::Dirichlet}) {
    const HarmonicDiskField H = data(kind, {1.0, 0.5}, {0.3});
    for (double eps : {1.0 / 8.0, 1.0 / 50.0}) {
      const BipolarFrame f = derive_frame({2.0, 5.0, eps});
      const HarmonicDiskField Ht = H.translated(f.x_0);
      const BipolarModeSolution sol = solve_modes(f, 1.0, H, kind);
      for (const BipolarPoint p : test::random_interior(f, 100, 7)) {
        const Vec2 g = Ht.gradient_unchecked(to_cartesian(f, p));
        worst = std::max(worst, norm(eval_mode_solution(sol, p).grad - g));
        worst = std::max(worst, norm(reflect(f, 1.0, H, kind, p).grad - g));
      }
    }
  }
  return {worst <= 1e-12, "max |grad - grad H~| " + fmt("%.2e", worst)};
}

Outcome closed_forms() {
  const BipolarFrame f = test::reference_frame();
  const HarmonicDiskField H({5.0, 0.0}, 5.0, {Complex{5.0, 0.0}}, 5.0);  // H~ = x1
  double worst = 0.0;
  for (BoundaryKind kind : {BoundaryKind::Dirichlet, BoundaryKind::Neumann}) {
    for (double k : {2.0, 0.5}) {
      const BipolarModeSolution sol = solve_modes(f, k, H, kind);
      for (std::size_t n = 1; n <= 64; ++n) {
        const ClosedFormCoefficients cf = closed_form_coefficients(f, tau(k), n, kind);
        const NormalizedModeCoefficients pc = sol.normalized_coefficients(n);
        const double A = pc.p.real() * std::exp(2.0 * static_cast<double>(n) * f.xi_i);
        worst = std::max({worst, std::abs(A - cf.A), std::abs(pc.q.real() - cf.B),
                          std::abs(pc.s.real() - cf.A - cf.B)});
      }
    }
  }
  return {worst <= 1e-10, "n <= 64, k in {2, 1/2}, both kinds: max dev " + fmt("%.2e", worst)};
}

Outcome special_functions() {
  double series = 0.0;
  for (double r : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    for (double phase : {0.0, 1.0, 2.0, 3.0, kPi}) {
      const Complex z = std::polar(r, phase);
      for (double b : {0.5, 1.0, 5.0, 20.0}) {
        series = std::max(series, std::abs(lerch_L_series(z, b) - lerch_L_quadrature(z, b)));
        series = std::max(series, std::abs(kernel_P_series(z, b) - kernel_P_quadrature(z, b)));
      }
    }
  }
  const double closed = std::abs(lerch_L(0.5, 1.0) - (2.0 * std::log(1.5) - 1.0));
  double pointwise = 0.0, increment = 0.0, refined = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double s = 0.05 * i * i / 4.0;
    for (int j = 0; j < 20; ++j) {
      const double th = -kPi + 2.0 * kPi * (j + 0.5) / 20.0;
      for (double b : {0.5, 2.0, 10.0}) {
        const Complex P1 = kernel_P(std::polar(std::exp(-s), th), b);
        pointwise = std::max(pointwise, std::abs(P1) / P_pointwise_bound(s, th, b));
        const Complex P2 = kernel_P(std::polar(std::exp(-1.5 * s), th), b);
        increment = std::max(increment, std::abs(P2 - P1) / P_increment_bound(s, 1.5 * s, th));
        const Complex Pm = kernel_P(std::polar(std::exp(-s), -th), b);
        refined = std::max(refined, std::abs(Pm) / P_refined_bound(s, th, b));
      }
    }
  }
  const bool pass = series <= 1e-10 && closed <= 1e-6 && pointwise < 1.0 && increment < 1.0 &&
                    refined < 1.0;
  return {pass, "series gap " + fmt("%.2e", series) + ", L(0.5;1) dev " + fmt("%.2e", closed) +
                    ", bound ratios " + fmt("%.4f", pointwise) + "/" + fmt("%.4f", increment) +
                    "/" + fmt("%.6f", refined)};
}

BlowUpReport sweep(BoundaryKind kind, std::vector<SweepCase> cases, std::vector<double> cos) {
  SweepSpec spec;
  spec.kind = kind;
  spec.cases = std::move(cases);
  spec.cos_coeffs = std::move(cos);
  return rate_sweep(spec);
}

// growth[c] in [6, 10] per step where `blows` is set, literal max/min < 2 elsewhere.
bool rate_pattern(const BlowUpReport& r, const std::array<bool, 4>& blows, std::string& detail) {
  bool pass = true;
  for (std::size_t c = 0; c < 4; ++c) {
    detail += std::string(" ") + kNormNames[c];
    if (blows[c]) {
      detail += " x" + list(r.growth[c]);
      for (double g : r.growth[c]) pass = pass && g >= 6.0 && g <= 10.0;
    } else {
      detail += " var " + fmt("%.3g", r.variation[c]);
      pass = pass && r.variation[c] < 2.0;
    }
  }
  return pass;
}

Outcome blow_up_rates() {
  std::string detail = "Dirichlet:";
  bool pass = rate_pattern(sweep(BoundaryKind::Dirichlet, dirichlet_sweep(), {1.0}),
                           {false, false, true, false}, detail);
  detail += "; Neumann:";
  pass = rate_pattern(sweep(BoundaryKind::Neumann, neumann_sweep(), {1.0}),
                      {true, true, false, true}, detail) && pass;
  return {pass, detail};
}

Outcome boundedness() {
  const BlowUpReport r = sweep(BoundaryKind::Dirichlet, dirichlet_sweep(), {1.0, 0.5});
  std::string detail;
  const bool pass = rate_pattern(r, {false, false, false, false}, detail);
  detail += "; largest rise";
  for (std::size_t c = 0; c < 4; ++c) detail += " " + fmt("%.3g", r.rise[c]);
  return {pass, detail.substr(1)};
}

// Remainders stay within 2x the first sweep value while error / peak strictly decreases.
bool remainder_pattern(const std::vector<double>& err, const std::vector<double>& peak,
                       std::string& detail) {
  bool pass = true;
  std::vector<double> ratio;
  for (std::size_t j = 0; j < err.size(); ++j) {
    ratio.push_back(err[j] / peak[j]);
    pass = pass && err[j] <= 2.0 * err.front();
    if (j > 0) pass = pass && ratio[j] < ratio[j - 1];
  }
  detail += " err " + list(err) + " peak " + list(peak) + " ratio " + list(ratio);
  return pass;
}

Outcome asymptotic_remainder() {
  std::string detail = "Dirichlet e_xi:";
  std::vector<double> err, peak;
  for (const SweepCase& c : dirichlet_sweep()) {
    const BipolarFrame f = derive_frame({2.0, 5.0, c.eps});
    const HarmonicDiskField H = data(BoundaryKind::Dirichlet, {1.0});
    const BlowUpDrivers d = extract_C1C2(H);
    const BipolarModeSolution sol = solve_modes(f, c.k, H, BoundaryKind::Dirichlet);
    double e = 0.0, p = 0.0;
    for (const GradientSample& g : eval_mode_line(sol, f.xi_i, Region::Shell, 1024)) {
      p = std::max(p, std::abs(g.grad_xi));
      e = std::max(e, std::abs(g.grad_xi - grad_v_asymptotic(f, c.k, d, g.bipolar).along_xi));
    }
    err.push_back(e);
    peak.push_back(p);
  }
  bool pass = remainder_pattern(err, peak, detail);

  // Neumann, k < 1: core e_xi and e_theta, shell e_theta on the inclusion boundary.
  struct Component {
    const char* name;
    Region region;
    bool along_xi;
    std::vector<double> err, peak;
  };
  std::vector<Component> comps{{"core e_xi", Region::Core, true, {}, {}},
                               {"core e_theta", Region::Core, false, {}, {}},
                               {"shell e_theta", Region::Shell, false, {}, {}}};
  for (const SweepCase& c : neumann_sweep()) {
    const BipolarFrame f = derive_frame({2.0, 5.0, c.eps});
    const HarmonicDiskField H = data(BoundaryKind::Neumann, {1.0});
    const BlowUpDrivers d = extract_C1C2(H);
    const BipolarModeSolution sol = solve_modes(f, c.k, H, BoundaryKind::Neumann);
    for (Component& comp : comps) {
      double e = 0.0, p = 0.0;
      for (const GradientSample& g : eval_mode_line(sol, f.xi_i, comp.region, 1024)) {
        const DirectionalGradient a = grad_u_asymptotic(f, c.k, d, g.bipolar, comp.region);
        const double exact = comp.along_xi ? g.grad_xi : g.grad_theta;
        const double approx = comp.along_xi ? a.along_xi : a.along_theta;
        p = std::max(p, std::abs(exact));
        e = std::max(e, std::abs(exact - approx));
      }
      comp.err.push_back(e);
      comp.peak.push_back(p);
    }
  }
  for (const Component& comp : comps) {
    detail += std::string("; Neumann ") + comp.name + ":";
    pass = remainder_pattern(comp.err, comp.peak, detail) && pass;
  }
  return {pass, detail};
}

Outcome image_charges() {
  const BipolarFrame f = test::reference_frame();
  const double b = beta(f, 2.0);
  const ImageChargeSystem plus(f, b, ImageSide::Plus);
  const double psi = plus.density(f.c_i).psi;
  const double total = plus.total_phi();
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double xi = f.xi_e + f.xi_gap * (0.02 + 0.96 * ((i * 7) % 50) / 49.0);
    const double th = -3.1 + 6.2 * i / 49.0;
    worst = std::max(worst, lerch_image_remainder(f, b, {xi, th}, ImageSide::Plus));
  }
  const bool pass = psi == 1.0 && std::abs(total - 1.0) <= 1e-8 && worst <= 1.0 / f.geometry.r_i;
  return {pass, "psi+(c_i)-1 = " + fmt("%.1e", psi - 1.0) + ", int phi+ - 1 = " +
                    fmt("%.1e", total - 1.0) + ", max remainder " + fmt("%.4f", worst) +
                    " (bound " + fmt("%.3g", 1.0 / f.geometry.r_i) + ")"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"frame constants", frame_constants},
      {"dual-solver equivalence", dual_solver},
      {"k=1 degeneracy", k1_degeneracy},
      {"closed-form mode coefficients", closed_forms},
      {"special functions", special_functions},
      {"blow-up rates", blow_up_rates},
      {"boundedness for C1=C2=0", boundedness},
      {"asymptotic remainder", asymptotic_remainder},
      {"image-charge identities", image_charges},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %s: %s (%.2fs) %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first, secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
