#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gapgrad/boundary_data.hpp"
#include "gapgrad/contrast.hpp"
#include "gapgrad/special_functions.hpp"

namespace gapgrad {

/// A gradient with its (e_xi, e_theta) components at the evaluation point.
struct DirectionalGradient {
  Vec2 grad;
  double along_xi = 0.0;
  double along_theta = 0.0;
};

/// Argument of P in the k > 1 shell formula: e^{-(2 xi_i - xi) - i theta}
/// (primary) or e^{-(xi + 2 xi_i) - i theta} (alternative).
enum class AsymptoticVariant { Primary, Alternative };

/// Leading blow-up term of grad v in the shell for k > 1:
///   (r_* tau / sqrt(eps)) (cosh xi + cos theta) [C1 Re P + C2 Im P] e_xi.
/// Throws DomainError for k <= 1 or a point outside the closed shell.
DirectionalGradient grad_v_asymptotic(const BipolarFrame& frame, double k, BlowUpDrivers c,
                                      BipolarPoint p,
                                      AsymptoticVariant variant = AsymptoticVariant::Primary);

/// Leading blow-up term of grad u for k < 1. With F = (r_* tau / sqrt(eps)) (cosh xi + cos theta):
///   core   e_xi: -F [C1 Re P + C2 Im P],  e_theta: F [C1 Im P - C2 Re P],  P at e^{-(xi + 2 xi_i) - i theta}
///   shell  e_xi: 0,                       e_theta: F [C1 Im P - C2 Re P],  P at e^{-(2 xi_i - xi) - i theta}
DirectionalGradient grad_u_asymptotic(const BipolarFrame& frame, double k, BlowUpDrivers c,
                                      BipolarPoint p, Region region = Region::Auto);

/// (r_*^2 tau / 2) grad [C1 Re q + C2 Im q] with q = q_d (k > 1) or q_u (k < 1);
/// the singular part whose removal leaves a bounded gradient.
DirectionalGradient singular_gradient_v(const BipolarFrame& frame, double k, BlowUpDrivers c,
                                        BipolarPoint p, Region region = Region::Auto);
DirectionalGradient singular_gradient_u(const BipolarFrame& frame, double k, BlowUpDrivers c,
                                        BipolarPoint p, Region region = Region::Auto);

enum class ImageSide { Plus, Minus };

struct ImageDensity {
  double phi = 0.0;
  double psi = 0.0;
};

/// Integrals of the log and dipole kernels against the image densities:
///   log    int ln|x - s| phi(s) ds
///   dipole int d/dx2 ln|x - s| psi(s) ds
/// with their x-gradients.
struct ImageIntegrals {
  double log_value = 0.0;
  Vec2 log_grad;
  double dipole_value = 0.0;
  Vec2 dipole_grad;
};

/// Image line charges on [alpha, c_i] (Plus) or [-c_i, -alpha] (Minus):
///   phi+(s) = 2 alpha beta e^{2 beta xi_i} (s - alpha)^{beta-1} / (s + alpha)^{beta+1}
///   psi+(s) = e^{2 beta xi_i} ((s - alpha) / (s + alpha))^beta
///   phi-(s) = -phi+(-s),  psi-(s) = -psi+(-s).
/// For beta < 1, phi has an integrable endpoint singularity at +-alpha.
class ImageChargeSystem {
 public:
  ImageChargeSystem(const BipolarFrame& frame, double beta, ImageSide side);

  double beta() const { return beta_; }
  ImageSide side() const { return side_; }
  std::pair<double, double> support() const;
  bool endpoint_singular() const { return beta_ < 1.0; }

  /// Throws DomainError for s outside the open support.
  ImageDensity density(double s) const;

  /// Throws DomainError when x lies on the support.
  ImageIntegrals integrals(CartesianPoint x) const;

  /// int phi over the support (the total charge) by the same quadrature.
  double total_phi() const;

 private:
  BipolarFrame frame_;
  double beta_;
  ImageSide side_;
};

ImageDensity image_density(const ImageChargeSystem& system, double s);

/// Image-charge approximations of the singular part:
///   v_*  = -r_*^2 tau [C1 log+ + C2 dipole+]     v~_* = -r_*^2 tau [C1 log- + C2 dipole-]
///   u_*  =  r_*^2 tau [C1 log- + C2 dipole-]     u~_* = -r_*^2 tau [C1 log+ + C2 dipole+]
enum class ImagePotential { VStar, VStarTilde, UStar, UStarTilde };

struct PotentialValue {
  double value = 0.0;
  Vec2 grad;
};

PotentialValue image_potential(const BipolarFrame& frame, double k, BlowUpDrivers c,
                               ImagePotential which, CartesianPoint x);

/// Same, reusing an image system built for (frame, beta(frame, k)).
PotentialValue image_potential(const ImageChargeSystem& system, double tau_value, double r_star,
                               BlowUpDrivers c, ImagePotential which, CartesianPoint x);

/// Norm of the complex gradient of
///   L(e^{-(2 xi_i - xi) - i theta}) - [log+ + i dipole+]      (Plus, shell points)
///   L(e^{-(xi + 2 xi_i) - i theta}) + [log- + i dipole-]      (Minus)
/// which stays below 1 / r_i.
double lerch_image_remainder(const BipolarFrame& frame, double beta, BipolarPoint p,
                             ImageSide side);

/// One point of a conductivity/gap sweep.
struct SweepCase {
  double eps = 0.0;
  double k = 1.0;
};

/// Directional sup-norms in the column order of the blow-up table.
struct DirectionalNorms {
  double core_xi = 0.0;
  double core_theta = 0.0;
  double shell_xi = 0.0;
  double shell_theta = 0.0;

  std::array<double, 4> as_array() const { return {core_xi, core_theta, shell_xi, shell_theta}; }
};

inline constexpr std::array<const char*, 4> kNormNames{"core_xi", "core_theta", "shell_xi",
                                                       "shell_theta"};

struct SweepSpec {
  double r_i = 2.0;
  double r_e = 5.0;
  std::vector<SweepCase> cases;
  BoundaryKind kind = BoundaryKind::Dirichlet;
  std::vector<double> cos_coeffs{1.0};
  std::vector<double> sin_coeffs;
  /// Level circles sampled in the shell (Chebyshev-spaced, both boundaries
  /// included) and in the core (geometric from xi_i to xi = 12).
  std::size_t shell_lines = 9;
  std::size_t core_lines = 24;
  /// Minimum theta samples per level circle (rounded up to a power of two).
  std::size_t min_samples = 1024;
  unsigned threads = 1;
};

struct SweepRecord {
  SweepCase point;
  BlowUpDrivers drivers;
  DirectionalNorms norms;
  std::size_t modes = 0;
  std::size_t samples_per_line = 0;
  double truncation_estimate = 0.0;
};

/// Slope of log(norm) against log(eps), with a 95% half-width (NaN with
/// fewer than three points).
struct RateFit {
  double slope = 0.0;
  double half_width = 0.0;
};

struct BlowUpReport {
  BoundaryKind kind = BoundaryKind::Dirichlet;
  std::vector<SweepRecord> records;
  std::array<RateFit, 4> fits{};
  /// max / min of each norm across the sweep.
  std::array<double, 4> variation{};
  /// Consecutive growth factors norm(j + 1) / norm(j) per norm.
  std::array<std::vector<double>, 4> growth;
  /// Largest increase norm(j) / norm(i), i < j, along the sweep. Decaying
  /// norms (the core field for k >> 1 with C1 = C2 = 0 falls like 1/k) have a
  /// large variation but a rise of at most 1.
  std::array<double, 4> rise{};
  /// A norm counts as blowing up when its rise reaches 2.
  std::array<bool, 4> blows_up{};
  std::string table_row;
  std::vector<std::string> warnings;
};

/// Sup-norms of the four directional gradient components of the exact
/// solution (spectral solver) over level circles, for every sweep case.
/// Requires at least two cases; eps must decrease along the sweep.
BlowUpReport rate_sweep(const SweepSpec& spec);

/// Classification label for a blow-up pattern, or "unmatched".
std::string classify_blow_up(const std::array<bool, 4>& blows_up);

}  // namespace gapgrad
