#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace gapgrad::cli {

namespace {

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void reject_unknown(const YAML::Node& node, const std::string& path,
                    const std::set<std::string>& allowed) {
  if (!node.IsMap()) throw ConfigError(path, "expected a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError(join(path, key), "unknown key");
  }
}

ExactNumber number(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) throw ConfigError(path, "expected a number");
  try {
    return ExactNumber::parse(node.Scalar());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, std::string("invalid number '") + node.Scalar() + "' (" + e.what() +
                                ")");
  }
}

std::vector<ExactNumber> number_list(const YAML::Node& node, const std::string& path) {
  std::vector<ExactNumber> out;
  if (node.IsScalar()) {
    out.push_back(number(node, path));
    return out;
  }
  if (!node.IsSequence()) throw ConfigError(path, "expected a number or a list of numbers");
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(number(node[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::size_t count(const YAML::Node& node, const std::string& path, std::size_t min_value) {
  const ExactNumber n = number(node, path);
  if (!n.exact() || n.denominator() != 1 || n.numerator() < 0) {
    throw ConfigError(path, "expected a non-negative integer");
  }
  if (static_cast<std::size_t>(n.numerator()) < min_value) {
    throw ConfigError(path, "must be at least " + std::to_string(min_value));
  }
  return static_cast<std::size_t>(n.numerator());
}

double positive(const YAML::Node& node, const std::string& path) {
  const double v = number(node, path).value();
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(path, "must be positive");
  return v;
}

std::string text(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) throw ConfigError(path, "expected a string");
  return node.Scalar();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string list_text(const std::vector<ExactNumber>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].text();
  return s + "]";
}

}  // namespace

const char* to_string(Task task) {
  switch (task) {
    case Task::Solve: return "solve";
    case Task::BoundaryProfile: return "boundary-profile";
    case Task::FieldGrid: return "field-grid";
    case Task::Sweep: return "sweep";
    case Task::Validate: return "validate";
  }
  return "?";
}

std::optional<Task> parse_task(const std::string& name) {
  for (Task t : {Task::Solve, Task::BoundaryProfile, Task::FieldGrid, Task::Sweep, Task::Validate}) {
    if (name == to_string(t)) return t;
  }
  return std::nullopt;
}

double ScheduleRule::k_for(const ExactNumber& eps) const {
  const ExactNumber k2 = kind == Kind::K2Eps ? constant.divided_by(eps) : constant.times(eps);
  return std::sqrt(k2.value());
}

std::string ScheduleRule::text() const {
  return std::string(kind == Kind::K2Eps ? "k2eps=" : "k2overEps=") + constant.text();
}

ScheduleRule parse_schedule(const std::string& s) {
  const std::string path = "conductivity.schedule";
  const std::size_t eq = s.find('=');
  if (eq == std::string::npos) throw ConfigError(path, "expected 'k2eps=c' or 'k2overEps=c'");
  std::string name = s.substr(0, eq);
  while (!name.empty() && name.back() == ' ') name.pop_back();
  while (!name.empty() && name.front() == ' ') name.erase(name.begin());
  ScheduleRule rule;
  if (name == "k2eps") {
    rule.kind = ScheduleRule::Kind::K2Eps;
  } else if (name == "k2overEps") {
    rule.kind = ScheduleRule::Kind::K2OverEps;
  } else {
    throw ConfigError(path, "unknown rule '" + name + "' (use k2eps or k2overEps)");
  }
  try {
    rule.constant = ExactNumber::parse(s.substr(eq + 1));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, std::string("invalid constant (") + e.what() + ")");
  }
  if (!(rule.constant.value() > 0.0)) throw ConfigError(path, "constant must be positive");
  return rule;
}

std::vector<RunCase> RunConfig::cases() const {
  std::vector<RunCase> out;
  for (const ExactNumber& e : eps) {
    out.push_back({e, schedule ? schedule->k_for(e) : (k ? k->value() : 1.0)});
  }
  return out;
}

DiskPairGeometry RunConfig::geometry(const ExactNumber& e) const {
  return {r_i.value(), r_e.value(), e.value()};
}

FourierBoundaryData RunConfig::boundary() const {
  std::vector<double> c, s;
  for (const auto& x : cos_coeffs) c.push_back(x.value());
  for (const auto& x : sin_coeffs) s.push_back(x.value());
  return FourierBoundaryData(kind, r_e.value(), c, s);
}

ProfileSide RunConfig::resolved_side() const {
  if (side) return *side;
  return kind == BoundaryKind::Dirichlet ? ProfileSide::Shell : ProfileSide::Core;
}

void RunConfig::validate() const {
  if (eps.empty()) throw ConfigError("geometry.eps", "at least one value is required");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const std::string path = eps.size() == 1 ? "geometry.eps" : "geometry.eps[" + std::to_string(i) + "]";
    try {
      geometry(eps[i]).validate();
    } catch (const DomainError& e) {
      throw ConfigError(path, e.what());
    }
  }
  if (k && schedule) throw ConfigError("conductivity", "give either k or schedule, not both");
  const bool needs_k = !task || *task != Task::Validate;
  if (needs_k && !k && !schedule) throw ConfigError("conductivity", "k or schedule is required");
  if (k && !(k->value() > 0.0)) throw ConfigError("conductivity.k", "must be positive");
  for (const RunCase& c : cases()) {
    if (!(c.k > 0.0) || !std::isfinite(c.k)) {
      throw ConfigError("conductivity.schedule", "produces a non-positive k");
    }
  }
  if (task && (*task == Task::BoundaryProfile || *task == Task::FieldGrid) && eps.size() != 1) {
    throw ConfigError("geometry.eps", std::string(to_string(*task)) + " takes a single value");
  }
  if (task && *task == Task::Sweep) {
    if (eps.size() < 2) throw ConfigError("geometry.eps", "a sweep needs at least two values");
    for (std::size_t i = 1; i < eps.size(); ++i) {
      if (!(eps[i].value() < eps[i - 1].value())) {
        throw ConfigError("geometry.eps", "sweep values must decrease");
      }
    }
  }
  if (cos_coeffs.empty() && sin_coeffs.empty()) {
    throw ConfigError("boundary", "at least one coefficient is required");
  }
  if (!(series_tol > 0.0)) throw ConfigError("tolerances.series", "must be positive");
  if (!(agreement_tol > 0.0)) throw ConfigError("tolerances.agreement", "must be positive");
  if (inject_fault != "none" && inject_fault != "an_sign") {
    throw ConfigError("validate.inject_fault", "expected 'none' or 'an_sign'");
  }
}

std::vector<std::pair<std::string, std::string>> RunConfig::describe() const {
  std::vector<std::pair<std::string, std::string>> d;
  d.emplace_back("task", task ? to_string(*task) : "");
  d.emplace_back("geometry.r_i", r_i.text());
  d.emplace_back("geometry.r_e", r_e.text());
  d.emplace_back("geometry.eps", list_text(eps));
  if (k) d.emplace_back("conductivity.k", k->text());
  if (schedule) d.emplace_back("conductivity.schedule", schedule->text());
  d.emplace_back("boundary.kind", to_string(kind));
  d.emplace_back("boundary.cos", list_text(cos_coeffs));
  d.emplace_back("boundary.sin", list_text(sin_coeffs));
  d.emplace_back("profile.side", resolved_side() == ProfileSide::Shell ? "shell" : "core");
  d.emplace_back("profile.points", std::to_string(profile_points));
  d.emplace_back("profile.images", profile_images ? "true" : "false");
  d.emplace_back("grid.nx", std::to_string(grid_nx));
  d.emplace_back("grid.ny", std::to_string(grid_ny));
  d.emplace_back("sweep.shell_lines", std::to_string(shell_lines));
  d.emplace_back("sweep.core_lines", std::to_string(core_lines));
  d.emplace_back("sweep.min_samples", std::to_string(min_samples));
  d.emplace_back("tolerances.series", fmt(series_tol));
  d.emplace_back("tolerances.agreement", fmt(agreement_tol));
  d.emplace_back("threads", std::to_string(threads));
  if (task && *task == Task::Validate) d.emplace_back("validate.inject_fault", inject_fault);
  return d;
}

RunConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("", std::string("YAML syntax error: ") + e.what());
  }
  RunConfig cfg;
  if (root.IsNull()) return cfg;
  reject_unknown(root, "",
                 {"task", "geometry", "conductivity", "boundary", "profile", "grid", "points",
                  "sweep", "tolerances", "threads", "output", "validate"});

  if (root["task"]) {
    const std::string t = text(root["task"], "task");
    cfg.task = parse_task(t);
    if (!cfg.task) throw ConfigError("task", "unknown task '" + t + "'");
  }
  if (const YAML::Node g = root["geometry"]) {
    reject_unknown(g, "geometry", {"r_i", "r_e", "eps"});
    if (g["r_i"]) cfg.r_i = number(g["r_i"], "geometry.r_i");
    if (g["r_e"]) cfg.r_e = number(g["r_e"], "geometry.r_e");
    if (g["eps"]) cfg.eps = number_list(g["eps"], "geometry.eps");
  }
  if (const YAML::Node c = root["conductivity"]) {
    reject_unknown(c, "conductivity", {"k", "schedule"});
    if (c["k"]) cfg.k = number(c["k"], "conductivity.k");
    if (c["schedule"]) cfg.schedule = parse_schedule(text(c["schedule"], "conductivity.schedule"));
  }
  if (const YAML::Node b = root["boundary"]) {
    reject_unknown(b, "boundary", {"kind", "cos", "sin"});
    if (b["kind"]) {
      const std::string kind = text(b["kind"], "boundary.kind");
      if (kind == "dirichlet") cfg.kind = BoundaryKind::Dirichlet;
      else if (kind == "neumann") cfg.kind = BoundaryKind::Neumann;
      else throw ConfigError("boundary.kind", "expected 'dirichlet' or 'neumann'");
    }
    if (b["cos"]) cfg.cos_coeffs = number_list(b["cos"], "boundary.cos");
    if (b["sin"]) cfg.sin_coeffs = number_list(b["sin"], "boundary.sin");
  }
  if (const YAML::Node p = root["profile"]) {
    reject_unknown(p, "profile", {"side", "points", "images"});
    if (p["side"]) {
      const std::string side = text(p["side"], "profile.side");
      if (side == "shell") cfg.side = ProfileSide::Shell;
      else if (side == "core") cfg.side = ProfileSide::Core;
      else throw ConfigError("profile.side", "expected 'shell' or 'core'");
    }
    if (p["points"]) cfg.profile_points = count(p["points"], "profile.points", 8);
    if (p["images"]) {
      try {
        cfg.profile_images = p["images"].as<bool>();
      } catch (const YAML::Exception&) {
        throw ConfigError("profile.images", "expected true or false");
      }
    }
  }
  if (const YAML::Node g = root["grid"]) {
    reject_unknown(g, "grid", {"nx", "ny"});
    if (g["nx"]) cfg.grid_nx = count(g["nx"], "grid.nx", 2);
    if (g["ny"]) cfg.grid_ny = count(g["ny"], "grid.ny", 2);
  }
  if (const YAML::Node pts = root["points"]) {
    if (!pts.IsSequence()) throw ConfigError("points", "expected a list of [x1, x2] pairs");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string path = "points[" + std::to_string(i) + "]";
      if (!pts[i].IsSequence() || pts[i].size() != 2) throw ConfigError(path, "expected [x1, x2]");
      cfg.points.push_back({number(pts[i][0], path + "[0]").value(),
                            number(pts[i][1], path + "[1]").value()});
    }
  }
  if (const YAML::Node s = root["sweep"]) {
    reject_unknown(s, "sweep", {"shell_lines", "core_lines", "min_samples"});
    if (s["shell_lines"]) cfg.shell_lines = count(s["shell_lines"], "sweep.shell_lines", 2);
    if (s["core_lines"]) cfg.core_lines = count(s["core_lines"], "sweep.core_lines", 2);
    if (s["min_samples"]) cfg.min_samples = count(s["min_samples"], "sweep.min_samples", 8);
  }
  if (const YAML::Node t = root["tolerances"]) {
    reject_unknown(t, "tolerances", {"series", "agreement"});
    if (t["series"]) cfg.series_tol = positive(t["series"], "tolerances.series");
    if (t["agreement"]) cfg.agreement_tol = positive(t["agreement"], "tolerances.agreement");
  }
  if (root["threads"]) cfg.threads = static_cast<unsigned>(count(root["threads"], "threads", 0));
  if (root["output"]) cfg.output = text(root["output"], "output");
  if (const YAML::Node v = root["validate"]) {
    reject_unknown(v, "validate", {"inject_fault"});
    if (v["inject_fault"]) cfg.inject_fault = text(v["inject_fault"], "validate.inject_fault");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace gapgrad::cli
