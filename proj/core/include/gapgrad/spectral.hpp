#pragma once

#include <cstddef>
#include <vector>

#include "gapgrad/boundary_data.hpp"
#include "gapgrad/sample.hpp"

namespace gapgrad {

/// Bipolar Fourier coefficients of the translated coordinates:
///   x1 = alpha [1 + 2 sum (-1)^n e^{-n xi} cos n theta]
///   x2 = -2 alpha sum (-1)^n e^{-n xi} sin n theta
struct LinearBipolarExpansion {
  double x1_constant = 0.0;
  std::vector<double> x1_cos;  ///< [n-1]: coefficient of e^{-n xi} cos n theta
  std::vector<double> x2_sin;  ///< [n-1]: coefficient of e^{-n xi} sin n theta

  double x1(BipolarPoint p) const;
  double x2(BipolarPoint p) const;
};

LinearBipolarExpansion linear_bipolar_expansion(const BipolarFrame& frame,
                                                std::size_t n_modes = 64);

struct SpectralOptions {
  /// Modes are kept while |tau| e^{-n (xi_i - xi_e)} exceeds this.
  double mode_tol = 1e-12;
  std::size_t min_modes = 16;
  std::size_t max_modes = 20000;
};

/// Mode n of the scattered field with exponential normalization:
///   shell  p e^{n xi} + q e^{-n xi},   core  s e^{-n xi},
/// each complex number c encoding c.real() cos n theta - c.imag() sin n theta.
struct NormalizedModeCoefficients {
  Complex p;
  Complex q;
  Complex s;
};

/// Solution u = H~ + w of the transmission problem, w expanded in theta-modes
/// on xi-level circles. Stored coefficients are scaled so every term is
/// bounded by its coefficient on the region where it applies:
///   shell  w_n = P_n e^{n (xi - xi_i)} + K_n e^{-n (xi - xi_e)}
///   core   w_n = S_n e^{-n (xi - xi_i)}
class BipolarModeSolution {
 public:
  const BipolarFrame& frame() const { return frame_; }
  double conductivity() const { return k_; }
  double tau() const { return tau_; }
  BoundaryKind kind() const { return kind_; }
  /// The background field in the translated frame.
  const HarmonicDiskField& background() const { return background_; }

  std::size_t mode_count() const { return P_.size(); }
  std::size_t sample_count() const { return samples_; }
  const std::vector<Complex>& shell_growing() const { return P_; }
  const std::vector<Complex>& shell_decaying() const { return K_; }
  const std::vector<Complex>& core() const { return S_; }

  /// n = 0 part: a0 + b0 xi in the shell, c0 in the core.
  double shell_a0() const { return a0_; }
  double shell_b0() const { return b0_; }
  double core_c0() const { return c0_; }
  /// Mean of dH~/dxi over {xi = xi_i}; zero up to sampling error.
  double mean_datum() const { return mean_datum_; }
  /// Largest coefficient of the last kept mode, relative to the largest overall.
  double truncation_estimate() const { return truncation_estimate_; }

  /// Coefficients of mode n >= 1 rescaled to e^{+-n xi}.
  NormalizedModeCoefficients normalized_coefficients(std::size_t n) const;

 private:
  friend BipolarModeSolution solve_modes(const BipolarFrame&, double, const HarmonicDiskField&,
                                         BoundaryKind, const SpectralOptions&);
  BipolarModeSolution(const BipolarFrame& frame, HarmonicDiskField background)
      : frame_(frame), background_(std::move(background)) {}

  BipolarFrame frame_;
  double k_ = 1.0;
  double tau_ = 0.0;
  BoundaryKind kind_ = BoundaryKind::Neumann;
  HarmonicDiskField background_;
  std::size_t samples_ = 0;
  std::vector<Complex> P_;
  std::vector<Complex> K_;
  std::vector<Complex> S_;
  double a0_ = 0.0;
  double b0_ = 0.0;
  double c0_ = 0.0;
  double mean_datum_ = 0.0;
  double truncation_estimate_ = 0.0;
};

/// Number of modes kept for the given frame and contrast.
std::size_t spectral_mode_count(const BipolarFrame& frame, double tau,
                                const SpectralOptions& options = {});

/// Solves the transmission problem with conductivity k inside D:
/// continuity and k-weighted flux across {xi = xi_i}; dw/dnu = 0 (Neumann)
/// or w = 0 (Dirichlet) on {xi = xi_e}. `field` is the background field on the
/// un-translated outer disk. Throws DomainError for k <= 0 or a field that
/// does not live on the outer disk.
BipolarModeSolution solve_modes(const BipolarFrame& frame, double k,
                                const HarmonicDiskField& field, BoundaryKind kind,
                                const SpectralOptions& options = {});

/// Total field H~ + w at p. Region selects the side on the inclusion boundary.
GradientSample eval_mode_solution(const BipolarModeSolution& sol, BipolarPoint p,
                                  Region region = Region::Auto);

/// Total field on the level circle {xi} at theta_j = 2 pi j / m (normalized
/// into (-pi, pi]); m is the smallest power of two >= max(min_samples, 2N+2).
std::vector<GradientSample> eval_mode_line(const BipolarModeSolution& sol, double xi,
                                           Region region, std::size_t min_samples = 0);

/// Closed-form coefficients for H~ = x1 (cos) and their counterparts: with
/// E = e^{-2n(xi_i - xi_e)},
///   Dirichlet A_n = -2 alpha (-1)^n tau / (1 - tau E),  B_n = 2 alpha (-1)^n tau E / (1 - tau E)
///   Neumann   A_n = -2 alpha (-1)^n tau / (1 + tau E),  B_n = -2 alpha (-1)^n tau E / (1 + tau E)
struct ClosedFormCoefficients {
  double A = 0.0;
  double B = 0.0;
};

ClosedFormCoefficients closed_form_coefficients(const BipolarFrame& frame, double tau,
                                                std::size_t n, BoundaryKind kind);

}  // namespace gapgrad
