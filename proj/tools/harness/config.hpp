#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exact_number.hpp"
#include "gapgrad/boundary_data.hpp"
#include "gapgrad/geometry.hpp"

namespace gapgrad::cli {

/// A config problem, tagged with the dotted path of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class Task { Solve, BoundaryProfile, FieldGrid, Sweep, Validate };

const char* to_string(Task task);
std::optional<Task> parse_task(const std::string& name);

/// k as a function of eps: k^2 eps = c ("k2eps=c") or k^2 / eps = c ("k2overEps=c").
struct ScheduleRule {
  enum class Kind { K2Eps, K2OverEps };
  Kind kind = Kind::K2Eps;
  ExactNumber constant;

  double k_for(const ExactNumber& eps) const;
  std::string text() const;
};

/// Throws ConfigError (path "conductivity.schedule") for malformed rules or
/// a non-positive constant.
ScheduleRule parse_schedule(const std::string& text);

enum class ProfileSide { Shell, Core };

struct RunCase {
  ExactNumber eps;
  double k = 1.0;
};

struct RunConfig {
  std::optional<Task> task;

  ExactNumber r_i = ExactNumber::from_ratio(2, 1);
  ExactNumber r_e = ExactNumber::from_ratio(5, 1);
  std::vector<ExactNumber> eps{ExactNumber::from_ratio(1, 50)};

  std::optional<ExactNumber> k;
  std::optional<ScheduleRule> schedule;

  BoundaryKind kind = BoundaryKind::Dirichlet;
  std::vector<ExactNumber> cos_coeffs{ExactNumber::from_ratio(1, 1)};
  std::vector<ExactNumber> sin_coeffs;

  /// boundary-profile
  std::optional<ProfileSide> side;
  std::size_t profile_points = 1024;
  bool profile_images = false;

  /// field-grid
  std::size_t grid_nx = 201;
  std::size_t grid_ny = 201;

  /// solve: evaluation points in the un-translated frame (defaults when empty).
  std::vector<CartesianPoint> points;

  /// sweep
  std::size_t shell_lines = 9;
  std::size_t core_lines = 24;
  std::size_t min_samples = 1024;

  /// Reflection-series tail tolerance and the required solver agreement.
  double series_tol = 1e-14;
  double agreement_tol = 1e-8;

  unsigned threads = 1;
  std::string output;

  /// validate: "none" or "an_sign" (flips the sign of A_n in the closed-form check).
  std::string inject_fault = "none";

  std::vector<RunCase> cases() const;
  DiskPairGeometry geometry(const ExactNumber& eps) const;
  FourierBoundaryData boundary() const;
  ProfileSide resolved_side() const;

  /// Resolved settings as (key, value) pairs for output headers.
  std::vector<std::pair<std::string, std::string>> describe() const;

  /// Throws ConfigError when fields are inconsistent.
  void validate() const;
};

/// Parses a YAML config. Numbers may be written as decimals or ratios
/// ("1/3200"). Unknown keys are rejected.
RunConfig parse_config(const std::string& yaml_text);

/// Reads and parses a file. Throws ConfigError with path "--config" when the
/// file cannot be read.
RunConfig load_config(const std::string& path);

}  // namespace gapgrad::cli
