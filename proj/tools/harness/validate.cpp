#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "json.hpp"

#include "gapgrad/asymptotics.hpp"
#include "gapgrad/reflection.hpp"
#include "gapgrad/spectral.hpp"
#include "gapgrad/special_functions.hpp"
#include "tasks.hpp"

namespace gapgrad::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOpen = std::numeric_limits<double>::quiet_NaN();

class Suite {
 public:
  explicit Suite(ValidationReport& r) : report_(r) {}

  void add(std::string name, std::string module, double measured, double lower, double upper,
           std::string detail = {}) {
    CheckResult c{std::move(name), std::move(module), measured, lower, upper, false,
                  std::move(detail)};
    c.passed = std::isfinite(measured) && (std::isnan(lower) || measured >= lower) &&
               (std::isnan(upper) || measured <= upper);
    report_.checks.push_back(std::move(c));
  }

  // Runs a check body; an exception becomes a failed check.
  void guarded(const std::string& name, const std::string& module,
               const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, module, kOpen, kOpen, kOpen, std::string("exception: ") + e.what());
    }
  }

 private:
  ValidationReport& report_;
};

std::vector<BipolarPoint> random_interior(const BipolarFrame& f, std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = f.geometry.r_e;
  std::vector<BipolarPoint> out;
  while (out.size() < n) {
    const double x1 = re + re * u(rng);
    const double x2 = re * u(rng);
    if ((x1 - re) * (x1 - re) + x2 * x2 >= re * re * (1.0 - 1e-9)) continue;
    const BipolarPoint p = to_bipolar(f, {x1 + f.x_0, x2});
    if (std::abs(p.xi - f.xi_i) < 1e-9) continue;
    out.push_back(p);
  }
  return out;
}

GradientSample reflect(const BipolarFrame& f, double k, const HarmonicDiskField& H,
                       BoundaryKind kind, BipolarPoint p, const ReflectionSeriesConfig& s) {
  return kind == BoundaryKind::Neumann ? solve_u_reflection(f, k, H, p, s)
                                       : solve_v_reflection(f, k, H, p, s);
}

void geometry_checks(Suite& s) {
  s.guarded("frame_constants", "bipolar_geometry", [&] {
    const BipolarFrame f = derive_frame({2.0, 5.0, 1.0 / 50.0});
    const double d = std::max({std::abs(f.alpha - 0.367534), std::abs(f.c_i - 2.033490),
                               std::abs(f.c_e - 5.013490)});
    s.add("frame_constants", "bipolar_geometry", d, kOpen, 1e-5,
          "alpha, c_i, c_e at r_i=2, r_e=5, eps=1/50");
  });
  s.guarded("coordinate_roundtrip", "bipolar_geometry", [&] {
    const BipolarFrame f = derive_frame({2.0, 5.0, 1.0 / 50.0});
    double worst = 0.0;
    for (const BipolarPoint& p : random_interior(f, 200, 11)) {
      const CartesianPoint x = to_cartesian(f, p);
      const BipolarPoint q = to_bipolar(f, x);
      const CartesianPoint y = to_cartesian(f, q);
      worst = std::max(worst, std::hypot(x.x1 - y.x1, x.x2 - y.x2) / (1.0 + std::hypot(x.x1, x.x2)));
    }
    s.add("coordinate_roundtrip", "bipolar_geometry", worst, kOpen, 1e-12);
  });
  s.guarded("scale_factor", "bipolar_geometry", [&] {
    const BipolarFrame f = derive_frame({2.0, 5.0, 1.0 / 8.0});
    double worst = 0.0;
    const double d = 1e-6;
    for (const BipolarPoint& p : random_interior(f, 50, 12)) {
      const CartesianPoint a = to_cartesian(f, {p.xi + d, p.theta});
      const CartesianPoint b = to_cartesian(f, {p.xi - d, p.theta});
      const double speed = std::hypot(a.x1 - b.x1, a.x2 - b.x2) / (2.0 * d);
      worst = std::max(worst, std::abs(speed * scale_factor(f, p) - 1.0));
    }
    s.add("scale_factor", "bipolar_geometry", worst, kOpen, 1e-6, "|dz/dxi| h = 1");
  });
}

void boundary_checks(Suite& s) {
  s.guarded("blow_up_drivers", "boundary_data", [&] {
    const double re = 5.0;
    const auto cd = extract_C1C2(harmonic_extension(FourierBoundaryData(BoundaryKind::Dirichlet, re, {1.0}, {})));
    const auto sd = extract_C1C2(harmonic_extension(FourierBoundaryData(BoundaryKind::Dirichlet, re, {}, {1.0})));
    const auto cn = extract_C1C2(harmonic_extension(FourierBoundaryData(BoundaryKind::Neumann, re, {1.0}, {})));
    const auto zero = extract_C1C2(harmonic_extension(FourierBoundaryData(BoundaryKind::Dirichlet, re, {1.0, 0.5}, {})));
    const double d = std::max({std::abs(cd.c1 - 1.0 / re), std::abs(cd.c2), std::abs(sd.c1),
                               std::abs(sd.c2 - 1.0 / re), std::abs(cn.c1 - 1.0), std::abs(cn.c2),
                               std::abs(zero.c1), std::abs(zero.c2)});
    s.add("blow_up_drivers", "boundary_data", d, kOpen, 1e-14,
          "Dirichlet cos/sin -> (1/r_e, 0)/(0, 1/r_e); Neumann cos -> (1, 0); cos t + cos 2t/2 -> (0, 0)");
  });
}

void solver_checks(Suite& s, const RunConfig& cfg) {
  ReflectionSeriesConfig series;
  series.tol = cfg.series_tol;

  s.guarded("k1_degeneracy", "reflection_solver", [&] {
    double worst = 0.0;
    const HarmonicDiskField H =
        harmonic_extension(FourierBoundaryData(BoundaryKind::Dirichlet, 5.0, {1.0}, {0.0, 0.5}));
    for (BoundaryKind kind : {BoundaryKind::Neumann, BoundaryKind::Dirichlet}) {
      const BipolarFrame f = derive_frame({2.0, 5.0, 1.0 / 50.0});
      const HarmonicDiskField Ht = H.translated(f.x_0);
      const BipolarModeSolution sol = solve_modes(f, 1.0, H, kind);
      for (const BipolarPoint& p : random_interior(f, 40, 21)) {
        const Vec2 g = Ht.gradient_unchecked(to_cartesian(f, p));
        worst = std::max(worst, norm(eval_mode_solution(sol, p).grad - g));
        worst = std::max(worst, norm(reflect(f, 1.0, H, kind, p, series).grad - g));
      }
    }
    s.add("k1_degeneracy", "reflection_solver", worst, kOpen, 1e-12, "both solvers at k = 1");
  });

  s.guarded("dual_solver", "reflection_solver", [&] {
    double worst = 0.0;
    for (BoundaryKind kind : {BoundaryKind::Neumann, BoundaryKind::Dirichlet}) {
      const HarmonicDiskField H =
          harmonic_extension(FourierBoundaryData(kind, 5.0, {1.0, 0.5}, {1.0}));
      const double scale = H.gradient_bound();
      for (double eps : {1.0 / 8.0, 1.0 / 50.0}) {
        for (double k : {1.0 / 8.0, 8.0}) {
          const BipolarFrame f = derive_frame({2.0, 5.0, eps});
          const BipolarModeSolution sol = solve_modes(f, k, H, kind);
          for (const BipolarPoint& p : random_interior(f, 12, 31)) {
            const Vec2 a = eval_mode_solution(sol, p).grad;
            const Vec2 b = reflect(f, k, H, kind, p, series).grad;
            worst = std::max(worst, norm(a - b) / std::max(norm(b), scale));
          }
        }
      }
    }
    s.add("dual_solver", "reflection_solver", worst, kOpen, cfg.agreement_tol,
          "spectral vs reflection gradients, relative");
  });

  s.guarded("density_reconstruction", "reflection_solver", [&] {
    const BipolarFrame f = derive_frame({2.0, 5.0, 1.0 / 8.0});
    const HarmonicDiskField H =
        harmonic_extension(FourierBoundaryData(BoundaryKind::Neumann, 5.0, {1.0}, {0.5}));
    double worst = 0.0;
    for (double k : {1.0 / 8.0, 8.0}) {
      for (const BipolarPoint& p : {BipolarPoint{0.3, 0.4}, BipolarPoint{0.8, -2.0},
                                    BipolarPoint{0.35, 3.0}}) {
        const Vec2 a = single_layer_reconstruction(f, k, H, to_cartesian(f, p), 512, series).grad;
        const Vec2 b = solve_u_reflection(f, k, H, p, series).grad;
        worst = std::max(worst, norm(a - b) / std::max(norm(b), H.gradient_bound()));
      }
    }
    s.add("density_reconstruction", "reflection_solver", worst, kOpen, 1e-10,
          "single layers with the density series vs the reflection series");
  });

  s.guarded("disk_layer_identity", "reflection_solver", [&] {
    const HarmonicDiskField v({1.0, 2.0}, 3.0, {Complex{1.0, 2.0}, Complex{0.3, -0.1}}, 0.7);
    const double d = std::max(std::abs(disk_layer_identity_check(v, {1.5, 2.5})),
                              std::abs(disk_layer_identity_check(v, {6.0, 2.0})));
    s.add("disk_layer_identity", "reflection_solver", d, kOpen, 1e-12);
  });

  const bool fault = cfg.inject_fault == "an_sign";
  for (BoundaryKind kind : {BoundaryKind::Dirichlet, BoundaryKind::Neumann}) {
    const std::string name = kind == BoundaryKind::Dirichlet ? "closed_form_dirichlet"
                                                             : "closed_form_neumann";
    s.guarded(name, "spectral_reference", [&] {
      const BipolarFrame f = derive_frame({2.0, 5.0, 1.0 / 50.0});
      // H~ = x1 in the translated frame.
      const HarmonicDiskField H({5.0, 0.0}, 5.0, {Complex{5.0, 0.0}}, 5.0);
      double worst = 0.0;
      for (double k : {2.0, 0.5}) {
        const BipolarModeSolution sol = solve_modes(f, k, H, kind);
        for (std::size_t n = 1; n <= 64; ++n) {
          ClosedFormCoefficients cf = closed_form_coefficients(f, tau(k), n, kind);
          if (fault) cf.A = -cf.A;
          const NormalizedModeCoefficients pc = sol.normalized_coefficients(n);
          const double A = pc.p.real() * std::exp(2.0 * static_cast<double>(n) * f.xi_i);
          worst = std::max({worst, std::abs(A - cf.A), std::abs(pc.q.real() - cf.B),
                            std::abs(pc.s.real() - cf.A - cf.B)});
        }
      }
      s.add(name, "spectral_reference", worst, kOpen, 1e-10,
            fault ? "fault injected: A_n sign flipped" : "modes n <= 64, k in {2, 1/2}");
    });
  }
}

void special_function_checks(Suite& s) {
  s.guarded("lerch_series_vs_quadrature", "special_functions", [&] {
    double worst = 0.0;
    for (double r : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
      for (double phase : {0.0, 1.0, 2.0, 3.0, kPi}) {
        const Complex z = std::polar(r, phase);
        for (double b : {0.5, 1.0, 5.0, 20.0}) {
          worst = std::max(worst, std::abs(lerch_L_series(z, b) - lerch_L_quadrature(z, b)));
          worst = std::max(worst, std::abs(kernel_P_series(z, b) - kernel_P_quadrature(z, b)));
        }
      }
    }
    s.add("lerch_series_vs_quadrature", "special_functions", worst, kOpen, 1e-10);
  });
  s.guarded("lerch_closed_form", "special_functions", [&] {
    const double d = std::abs(lerch_L(0.5, 1.0) - (2.0 * std::log(1.5) - 1.0));
    s.add("lerch_closed_form", "special_functions", d, kOpen, 1e-6, "L(0.5; 1) = 2 ln 1.5 - 1");
  });
  s.guarded("P_bounds", "special_functions", [&] {
    double pointwise = 0.0, increment = 0.0, refined = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double sv = 0.05 * i * i / 4.0;
      for (int j = 0; j < 20; ++j) {
        const double th = -kPi + 2.0 * kPi * (j + 0.5) / 20.0;
        for (double b : {0.5, 2.0, 10.0}) {
          const Complex P1 = kernel_P(std::polar(std::exp(-sv), th), b);
          pointwise = std::max(pointwise, std::abs(P1) / P_pointwise_bound(sv, th, b));
          const double s2 = sv * 1.5;
          const Complex P2 = kernel_P(std::polar(std::exp(-s2), th), b);
          increment = std::max(increment, std::abs(P2 - P1) / P_increment_bound(sv, s2, th));
          const Complex Pm = kernel_P(std::polar(std::exp(-sv), -th), b);
          refined = std::max(refined, std::abs(Pm) / P_refined_bound(sv, th, b));
        }
      }
    }
    s.add("P_pointwise_bound", "special_functions", pointwise, kOpen, 1.0, "max |P| / bound");
    s.add("P_increment_bound", "special_functions", increment, kOpen, 1.0, "max |dP| / bound");
    s.add("P_refined_bound", "special_functions", refined, kOpen, 1.0, "max |P| / refined bound");
  });
}

void image_checks(Suite& s) {
  s.guarded("image_charges", "asymptotics", [&] {
    const BipolarFrame f = derive_frame({2.0, 5.0, 1.0 / 50.0});
    double psi = 0.0, total = 0.0;
    for (double b : {0.3, 1.0, 5.0, 40.0}) {
      const ImageChargeSystem sys(f, b, ImageSide::Plus);
      psi = std::max(psi, std::abs(sys.density(f.c_i).psi - 1.0));
      total = std::max(total, std::abs(sys.total_phi() - 1.0));
    }
    s.add("image_psi_at_c_i", "asymptotics", psi, kOpen, 1e-14, "psi+(c_i) = 1");
    s.add("image_total_charge", "asymptotics", total, kOpen, 1e-8, "int phi+ = 1");
  });
  s.guarded("lerch_image_remainder", "asymptotics", [&] {
    const BipolarFrame f = derive_frame({2.0, 5.0, 1.0 / 50.0});
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double xi = f.xi_e + f.xi_gap * (0.02 + 0.96 * ((i * 7) % 50) / 49.0);
      const double th = -3.1 + 6.2 * i / 49.0;
      worst = std::max(worst, lerch_image_remainder(f, 1.0, {xi, th}, ImageSide::Plus));
    }
    s.add("lerch_image_remainder", "asymptotics", worst, kOpen, 1.0 / f.geometry.r_i,
          "50 shell points, bound 1/r_i");
  });
  s.guarded("singular_theta_continuity", "asymptotics", [&] {
    double worst = 0.0;
    for (double eps : {1.0 / 3200.0, 1.0 / 204800.0}) {
      const BipolarFrame f = derive_frame({2.0, 5.0, eps});
      const double k = std::sqrt(2.0 * eps);
      for (int j = 0; j < 64; ++j) {
        const BipolarPoint p{f.xi_i, -kPi + 2.0 * kPi * (j + 0.5) / 64.0};
        const double a = singular_gradient_u(f, k, {1.0, 0.5}, p, Region::Shell).along_theta;
        const double b = singular_gradient_u(f, k, {1.0, 0.5}, p, Region::Core).along_theta;
        worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a)));
      }
    }
    s.add("singular_theta_continuity", "asymptotics", worst, kOpen, 1e-8,
          "q-based e_theta part across the inclusion boundary");
  });
}

struct SweepExpectation {
  std::string name;
  BoundaryKind kind;
  std::vector<SweepCase> cases;
  std::vector<double> cos_coeffs;
  std::array<bool, 4> blows;
};

void sweep_checks(Suite& s, const RunConfig& cfg) {
  std::vector<SweepCase> dir, neu;
  for (double e : {1.0 / 50.0, 1.0 / 3200.0, 1.0 / 204800.0}) dir.push_back({e, std::sqrt(0.08 / e)});
  for (double e : {1.0 / 3200.0, 1.0 / 204800.0}) neu.push_back({e, std::sqrt(2.0 * e)});
  const std::vector<SweepExpectation> runs{
      {"sweep_dirichlet", BoundaryKind::Dirichlet, dir, {1.0}, {false, false, true, false}},
      {"sweep_neumann", BoundaryKind::Neumann, neu, {1.0}, {true, true, false, true}},
      {"sweep_bounded", BoundaryKind::Dirichlet, dir, {1.0, 0.5}, {false, false, false, false}},
  };
  for (const SweepExpectation& run : runs) {
    s.guarded(run.name, "asymptotics", [&] {
      SweepSpec spec;
      spec.kind = run.kind;
      spec.cases = run.cases;
      spec.cos_coeffs = run.cos_coeffs;
      spec.threads = cfg.threads;
      const BlowUpReport rep = rate_sweep(spec);
      for (std::size_t c = 0; c < 4; ++c) {
        const std::string name = run.name + "." + kNormNames[c];
        if (run.blows[c]) {
          for (std::size_t j = 0; j < rep.growth[c].size(); ++j) {
            s.add(name + ".growth[" + std::to_string(j) + "]", "asymptotics", rep.growth[c][j], 6.0,
                  10.0, "growth factor per sweep step");
          }
        } else {
          s.add(name + ".rise", "asymptotics", rep.rise[c], kOpen, std::nextafter(2.0, 0.0),
                "largest increase along the sweep, below 2 (variation " +
                    format_double(rep.variation[c]) + ")");
        }
      }
    });
  }
}

void remainder_checks(Suite& s) {
  s.guarded("remainder_dirichlet", "asymptotics", [&] {
    std::vector<double> err, ratio;
    for (double e : {1.0 / 50.0, 1.0 / 3200.0, 1.0 / 204800.0}) {
      const double k = std::sqrt(0.08 / e);
      const BipolarFrame f = derive_frame({2.0, 5.0, e});
      const HarmonicDiskField H =
          harmonic_extension(FourierBoundaryData(BoundaryKind::Dirichlet, 5.0, {1.0}, {}));
      const BlowUpDrivers c = extract_C1C2(H);
      const BipolarModeSolution sol = solve_modes(f, k, H, BoundaryKind::Dirichlet);
      double peak = 0.0, worst = 0.0;
      for (const GradientSample& g : eval_mode_line(sol, f.xi_i, Region::Shell, 1024)) {
        peak = std::max(peak, std::abs(g.grad_xi));
        worst = std::max(worst, std::abs(g.grad_xi - grad_v_asymptotic(f, k, c, g.bipolar).along_xi));
      }
      err.push_back(worst);
      ratio.push_back(worst / peak);
    }
    double growth = 0.0;
    bool decreasing = true;
    for (std::size_t j = 1; j < err.size(); ++j) {
      growth = std::max(growth, err[j] / err.front());
      decreasing = decreasing && ratio[j] < ratio[j - 1];
    }
    s.add("remainder_dirichlet.bounded", "asymptotics", growth, kOpen, 2.0,
          "max_j E_j / E_first on the outer trace");
    s.add("remainder_dirichlet.ratio_decreasing", "asymptotics", decreasing ? 1.0 : 0.0, 1.0, kOpen,
          "error / peak decreases with eps");
  });
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json j;
  j["passed"] = passed();
  nlohmann::ordered_json conf = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) conf[k] = v;
  j["config"] = conf;
  auto num = [](double v) -> nlohmann::ordered_json {
    if (std::isnan(v)) return nullptr;
    return v;
  };
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckResult& c : checks) {
    arr.push_back({{"name", c.name},
                   {"module", c.module},
                   {"passed", c.passed},
                   {"measured", num(c.measured)},
                   {"lower", num(c.lower)},
                   {"upper", num(c.upper)},
                   {"detail", c.detail}});
  }
  j["checks"] = arr;
  return j.dump(2);
}

ValidationReport run_validate(const RunConfig& cfg) {
  ValidationReport report;
  report.config = cfg.describe();
  Suite s(report);
  geometry_checks(s);
  boundary_checks(s);
  solver_checks(s, cfg);
  special_function_checks(s);
  image_checks(s);
  sweep_checks(s, cfg);
  remainder_checks(s);
  return report;
}

}  // namespace gapgrad::cli
