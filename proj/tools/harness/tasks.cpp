#include "tasks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "gapgrad/asymptotics.hpp"
#include "gapgrad/parallel.hpp"
#include "gapgrad/reflection.hpp"
#include "gapgrad/spectral.hpp"

namespace gapgrad::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void add_config_meta(Table& t, const RunConfig& cfg) {
  for (const auto& [k, v] : cfg.describe()) t.meta("config." + k, v);
}

void add_frame_meta(Table& t, const std::string& prefix, const BipolarFrame& f, double k,
                    const HarmonicDiskField& H) {
  t.meta(prefix + "eps", f.geometry.eps);
  t.meta(prefix + "k", k);
  t.meta(prefix + "alpha", f.alpha);
  t.meta(prefix + "c_i", f.c_i);
  t.meta(prefix + "c_e", f.c_e);
  t.meta(prefix + "x_0", f.x_0);
  t.meta(prefix + "xi_i", f.xi_i);
  t.meta(prefix + "xi_e", f.xi_e);
  t.meta(prefix + "r_star", f.r_star);
  t.meta(prefix + "tau", tau(k));
  if (k != 1.0) t.meta(prefix + "beta", beta(f, k));
  const BlowUpDrivers c = extract_C1C2(H);
  t.meta(prefix + "C1", c.c1);
  t.meta(prefix + "C2", c.c2);
}

ReflectionSeriesConfig series_config(const RunConfig& cfg) {
  ReflectionSeriesConfig s;
  s.tol = cfg.series_tol;
  return s;
}

GradientSample reflection_at(const BipolarFrame& f, double k, const HarmonicDiskField& H,
                             BoundaryKind kind, BipolarPoint p, const ReflectionSeriesConfig& s,
                             Region region) {
  return kind == BoundaryKind::Neumann ? solve_u_reflection(f, k, H, p, s, region)
                                       : solve_v_reflection(f, k, H, p, s, region);
}

// |a - b| relative to max(|b|, sup |grad H|).
double relative_gap(Vec2 a, Vec2 b, double scale) {
  return norm(a - b) / std::max(norm(b), scale);
}

void note_failure(TaskResult& r, const std::string& what) {
  r.status = kExitFailure;
  r.messages.push_back(what);
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

TaskResult run_solve(const RunConfig& cfg) {
  cfg.validate();
  TaskResult out;
  Table& t = out.table;
  add_config_meta(t, cfg);
  const double re = cfg.r_e.value();
  const double ri = cfg.r_i.value();
  std::vector<CartesianPoint> points = cfg.points;
  if (points.empty()) {
    const double e = cfg.eps.front().value();
    points = {{0.5 * e, 0.0}, {ri + e, 0.0}, {re, 0.0}, {re, 0.5 * re}, {re, -0.5 * re},
              {1.75 * re, 0.0}};
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double dx = points[i].x1 - re;
    if (dx * dx + points[i].x2 * points[i].x2 > re * re * (1.0 + 1e-14)) {
      throw ConfigError("points[" + std::to_string(i) + "]", "lies outside the outer disk");
    }
  }
  t.header = {"eps", "k", "x1", "x2", "xi", "theta", "core", "value", "grad_x1", "grad_x2",
              "grad_xi", "grad_theta", "reflection_grad_x1", "reflection_grad_x2", "rel_diff"};
  const HarmonicDiskField H = harmonic_extension(cfg.boundary());
  const double scale = H.gradient_bound();
  const auto cases = cfg.cases();
  double worst = 0.0;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const BipolarFrame f = derive_frame(cfg.geometry(cases[c].eps));
    const double k = cases[c].k;
    add_frame_meta(t, cases.size() == 1 ? "frame." : "frame[" + std::to_string(c) + "].", f, k, H);
    const BipolarModeSolution sol = solve_modes(f, k, H, cfg.kind);
    std::vector<std::vector<double>> rows(points.size());
    parallel_for(points.size(), cfg.threads, [&](std::size_t i) {
      const CartesianPoint y{points[i].x1 + f.x_0, points[i].x2};
      BipolarPoint p;
      try {
        p = to_bipolar(f, y);
      } catch (const SingularPointError&) {
        throw ConfigError("points[" + std::to_string(i) + "]", "coincides with a bipolar pole");
      }
      p.xi = std::max(p.xi, f.xi_e);
      const GradientSample s = eval_mode_solution(sol, p);
      const GradientSample r =
          reflection_at(f, k, H, cfg.kind, p, series_config(cfg), Region::Auto);
      rows[i] = {cases[c].eps.value(), k, points[i].x1, points[i].x2, p.xi, p.theta,
                 p.xi >= f.xi_i ? 1.0 : 0.0, s.value, s.grad.x1, s.grad.x2, s.grad_xi,
                 s.grad_theta, r.grad.x1, r.grad.x2, relative_gap(s.grad, r.grad, scale)};
    });
    for (auto& row : rows) {
      worst = std::max(worst, row.back());
      t.rows.push_back(std::move(row));
    }
  }
  t.meta("solver_agreement", worst);
  if (!(worst <= cfg.agreement_tol)) {
    note_failure(out, "solvers disagree: " + fmt(worst) + " > " + fmt(cfg.agreement_tol));
  }
  return out;
}

TaskResult run_boundary_profile(const RunConfig& cfg) {
  cfg.validate();
  TaskResult out;
  Table& t = out.table;
  add_config_meta(t, cfg);
  const RunCase rc = cfg.cases().front();
  const double k = rc.k;
  const BipolarFrame f = derive_frame(cfg.geometry(rc.eps));
  const HarmonicDiskField H = harmonic_extension(cfg.boundary());
  add_frame_meta(t, "frame.", f, k, H);
  const BlowUpDrivers drivers = extract_C1C2(H);
  const bool shell = cfg.resolved_side() == ProfileSide::Shell;
  const Region region = shell ? Region::Shell : Region::Core;
  const bool dirichlet = cfg.kind == BoundaryKind::Dirichlet;
  const bool v_blows = dirichlet && k > 1.0;
  const bool u_blows = !dirichlet && k < 1.0;

  if (dirichlet) {
    t.meta("asym_primary", v_blows && shell ? "v e_xi, P at e^{-(2 xi_i - xi) - i theta}" : "0");
    t.meta("asym_alternative", v_blows && shell ? "v e_xi, P at e^{-(xi + 2 xi_i) - i theta}" : "0");
  } else {
    t.meta("asym_primary", u_blows ? "u e_theta" : "0");
    t.meta("asym_alternative", u_blows && !shell ? "u e_xi" : "0");
  }
  t.header = {"theta", "exact_xi", "exact_theta", "asym_primary", "asym_alternative"};
  if (cfg.profile_images) {
    for (const char* c : {"image_xi", "image_theta", "image_tilde_xi", "image_tilde_theta"}) {
      t.header.emplace_back(c);
    }
    t.meta("image", dirichlet ? "v_*" : "u_*");
    t.meta("image_tilde", dirichlet ? "v~_*" : "u~_* (shell only)");
  }

  const BipolarModeSolution sol = solve_modes(f, k, H, cfg.kind);
  const double scale = H.gradient_bound();
  const std::size_t m = cfg.profile_points;
  std::vector<std::vector<double>> rows(m);
  std::vector<double> gaps(m, 0.0);
  std::optional<ImageChargeSystem> plus, minus;
  const bool images = cfg.profile_images && (v_blows || u_blows);
  if (images) {
    const double b = beta(f, k);
    plus.emplace(f, b, ImageSide::Plus);
    minus.emplace(f, b, ImageSide::Minus);
  }
  parallel_for(m, cfg.threads, [&](std::size_t j) {
    const double theta = normalize_angle(-kPi + 2.0 * kPi * static_cast<double>(j + 1) / m);
    const BipolarPoint p{f.xi_i, theta};
    const GradientSample s = eval_mode_solution(sol, p, region);
    const GradientSample r = reflection_at(f, k, H, cfg.kind, p, series_config(cfg), region);
    gaps[j] = relative_gap(s.grad, r.grad, scale);
    double a1 = 0.0, a2 = 0.0;
    if (v_blows && shell) {
      a1 = grad_v_asymptotic(f, k, drivers, p, AsymptoticVariant::Primary).along_xi;
      a2 = grad_v_asymptotic(f, k, drivers, p, AsymptoticVariant::Alternative).along_xi;
    } else if (u_blows) {
      const DirectionalGradient g = grad_u_asymptotic(f, k, drivers, p, region);
      a1 = g.along_theta;
      a2 = g.along_xi;
    }
    std::vector<double> row{theta, s.grad_xi, s.grad_theta, a1, a2};
    if (cfg.profile_images) {
      double ix = 0.0, it = 0.0, jx = 0.0, jt = 0.0;
      if (images) {
        const LocalBasis b = basis_vectors(f, p);
        const CartesianPoint x = to_cartesian(f, p);
        const double tv = tau(k);
        const ImagePotential main = dirichlet ? ImagePotential::VStar : ImagePotential::UStar;
        const ImagePotential alt = dirichlet ? ImagePotential::VStarTilde : ImagePotential::UStarTilde;
        const ImageChargeSystem& sys_main = dirichlet ? *plus : *minus;
        const ImageChargeSystem& sys_alt = dirichlet ? *minus : *plus;
        const PotentialValue g1 = image_potential(sys_main, tv, f.r_star, drivers, main, x);
        ix = dot(g1.grad, b.e_xi);
        it = dot(g1.grad, b.e_theta);
        if (dirichlet || shell) {
          const PotentialValue g2 = image_potential(sys_alt, tv, f.r_star, drivers, alt, x);
          jx = dot(g2.grad, b.e_xi);
          jt = dot(g2.grad, b.e_theta);
        } else {
          jx = jt = kNaN;
        }
      }
      row.insert(row.end(), {ix, it, jx, jt});
    }
    rows[j] = std::move(row);
  });
  std::sort(rows.begin(), rows.end(),
            [](const std::vector<double>& a, const std::vector<double>& b) { return a[0] < b[0]; });
  t.rows = std::move(rows);
  const double worst = *std::max_element(gaps.begin(), gaps.end());
  t.meta("solver_agreement", worst);
  if (!(worst <= cfg.agreement_tol)) {
    note_failure(out, "solvers disagree on the trace: " + fmt(worst) + " > " +
                          fmt(cfg.agreement_tol));
  }
  return out;
}

TaskResult run_field_grid(const RunConfig& cfg) {
  cfg.validate();
  TaskResult out;
  Table& t = out.table;
  add_config_meta(t, cfg);
  const RunCase rc = cfg.cases().front();
  const BipolarFrame f = derive_frame(cfg.geometry(rc.eps));
  const HarmonicDiskField H = harmonic_extension(cfg.boundary());
  add_frame_meta(t, "frame.", f, rc.k, H);
  const BipolarModeSolution sol = solve_modes(f, rc.k, H, cfg.kind);
  const double re = cfg.r_e.value();
  const std::size_t nx = cfg.grid_nx, ny = cfg.grid_ny;
  t.header = {"x1", "x2", "inside", "grad_x1", "grad_x2", "grad_norm"};
  t.rows.assign(nx * ny, {});
  parallel_for(ny, cfg.threads, [&](std::size_t iy) {
    const double x2 = -re + 2.0 * re * static_cast<double>(iy) / static_cast<double>(ny - 1);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double x1 = 2.0 * re * static_cast<double>(ix) / static_cast<double>(nx - 1);
      const double dx = x1 - re;
      std::vector<double>& row = t.rows[iy * nx + ix];
      if (dx * dx + x2 * x2 > re * re) {
        row = {x1, x2, 0.0, kNaN, kNaN, kNaN};
        continue;
      }
      CartesianPoint y{x1 + f.x_0, x2};
      BipolarPoint p;
      try {
        p = to_bipolar(f, y);
      } catch (const SingularPointError&) {
        // The field is smooth at the pole; step off it.
        y.x2 += 1e-9 * re;
        p = to_bipolar(f, y);
      }
      p.xi = std::max(p.xi, f.xi_e);
      const GradientSample s = eval_mode_solution(sol, p);
      row = {x1, x2, 1.0, s.grad.x1, s.grad.x2, norm(s.grad)};
    }
  });
  std::size_t best = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double v = t.rows[i][5];
    if (!std::isnan(v) && (std::isnan(t.rows[best][5]) || v > t.rows[best][5])) best = i;
  }
  t.meta("max_grad_norm", t.rows[best][5]);
  t.meta("argmax_x1", t.rows[best][0]);
  t.meta("argmax_x2", t.rows[best][1]);
  return out;
}

TaskResult run_sweep(const RunConfig& cfg) {
  cfg.validate();
  TaskResult out;
  Table& t = out.table;
  add_config_meta(t, cfg);
  SweepSpec spec;
  spec.r_i = cfg.r_i.value();
  spec.r_e = cfg.r_e.value();
  spec.kind = cfg.kind;
  for (const RunCase& c : cfg.cases()) spec.cases.push_back({c.eps.value(), c.k});
  spec.cos_coeffs.clear();
  for (const auto& x : cfg.cos_coeffs) spec.cos_coeffs.push_back(x.value());
  for (const auto& x : cfg.sin_coeffs) spec.sin_coeffs.push_back(x.value());
  spec.shell_lines = cfg.shell_lines;
  spec.core_lines = cfg.core_lines;
  spec.min_samples = cfg.min_samples;
  spec.threads = cfg.threads;
  const BlowUpReport report = rate_sweep(spec);

  const HarmonicDiskField H = harmonic_extension(cfg.boundary());
  for (std::size_t i = 0; i < spec.cases.size(); ++i) {
    const BipolarFrame f = derive_frame({spec.r_i, spec.r_e, spec.cases[i].eps});
    add_frame_meta(t, "frame[" + std::to_string(i) + "].", f, spec.cases[i].k, H);
  }
  for (std::size_t c = 0; c < 4; ++c) {
    const std::string name = kNormNames[c];
    std::string growth;
    for (double g : report.growth[c]) growth += (growth.empty() ? "" : " ") + fmt(g);
    t.meta(name + ".growth", growth);
    t.meta(name + ".variation", report.variation[c]);
    t.meta(name + ".rise", report.rise[c]);
    t.meta(name + ".slope", report.fits[c].slope);
    t.meta(name + ".slope_half_width", report.fits[c].half_width);
    t.meta(name + ".blows_up", report.blows_up[c] ? "true" : "false");
  }
  t.meta("classification", report.table_row);
  for (const std::string& w : report.warnings) {
    t.meta("warning", w);
    out.messages.push_back("warning: " + w);
  }
  t.header = {"eps", "k", "C1", "C2", "modes", "samples_per_line", "truncation",
              "core_xi", "core_theta", "shell_xi", "shell_theta"};
  for (const SweepRecord& r : report.records) {
    t.rows.push_back({r.point.eps, r.point.k, r.drivers.c1, r.drivers.c2,
                      static_cast<double>(r.modes), static_cast<double>(r.samples_per_line),
                      r.truncation_estimate, r.norms.core_xi, r.norms.core_theta,
                      r.norms.shell_xi, r.norms.shell_theta});
  }
  return out;
}

int run_task(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (!cfg.task) throw ConfigError("task", "no task given");
  if (*cfg.task == Task::Validate) {
    cfg.validate();
    const ValidationReport rep = run_validate(cfg);
    out << rep.to_json() << '\n';
    for (const CheckResult& c : rep.checks) {
      if (!c.passed) log << "FAILED " << c.name << ": measured " << fmt(c.measured) << " ("
                         << c.detail << ")\n";
    }
    log << (rep.passed() ? "all checks passed" : "validation failed") << '\n';
    return rep.passed() ? kExitOk : kExitFailure;
  }
  TaskResult r;
  switch (*cfg.task) {
    case Task::Solve: r = run_solve(cfg); break;
    case Task::BoundaryProfile: r = run_boundary_profile(cfg); break;
    case Task::FieldGrid: r = run_field_grid(cfg); break;
    case Task::Sweep: r = run_sweep(cfg); break;
    case Task::Validate: break;
  }
  r.table.write_csv(out);
  for (const std::string& m : r.messages) log << m << '\n';
  return r.status;
}

}  // namespace gapgrad::cli
