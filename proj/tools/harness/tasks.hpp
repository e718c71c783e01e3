#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "table.hpp"

namespace gapgrad::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2 };

struct TaskResult {
  Table table;
  int status = kExitOk;
  std::vector<std::string> messages;
};

/// Both exact solvers at the configured points (un-translated frame).
TaskResult run_solve(const RunConfig& cfg);

/// theta-trace of the exact gradient on the inclusion boundary (one side)
/// with the asymptotic formulas alongside.
TaskResult run_boundary_profile(const RunConfig& cfg);

/// |grad w| on a regular Cartesian grid over the un-translated outer disk.
TaskResult run_field_grid(const RunConfig& cfg);

/// Directional sup-norms over an eps sweep and the blow-up classification.
TaskResult run_sweep(const RunConfig& cfg);

struct CheckResult {
  std::string name;
  std::string module;
  double measured = 0.0;
  /// Pass when lower <= measured <= upper (NaN bounds are open).
  double lower = 0.0;
  double upper = 0.0;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, std::string>> config;
  bool passed() const;
  std::string to_json() const;
};

ValidationReport run_validate(const RunConfig& cfg);

/// Runs cfg.task, writing CSV (or the JSON report) to `out` and progress and
/// failures to `log`. Returns the process exit code.
int run_task(const RunConfig& cfg, std::ostream& out, std::ostream& log);

}  // namespace gapgrad::cli
