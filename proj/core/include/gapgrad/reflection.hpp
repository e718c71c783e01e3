#pragma once

#include <cstddef>
#include <vector>

#include "gapgrad/boundary_data.hpp"
#include "gapgrad/contrast.hpp"
#include "gapgrad/sample.hpp"

namespace gapgrad {

struct ReflectionSeriesConfig {
  /// Target for the tail bound, relative to sup |grad H|.
  double tol = 1e-14;
  std::size_t n_max = 1'000'000;

  void validate() const;
};

/// xi_{i,n} = 2n (xi_i - xi_e) + xi_i and xi_{e,n} = 2n (xi_i - xi_e) + xi_e.
class ReflectionLadder {
 public:
  explicit ReflectionLadder(const BipolarFrame& frame) : frame_(frame) {}

  double xi_i(std::size_t n) const;
  double xi_e(std::size_t n) const;

 private:
  BipolarFrame frame_;
};

/// Neumann solution u = H~ + sum (-tau)^{n+1} [...] by repeated reflection
/// across the two circles; H is the background field on the un-translated
/// outer disk. The result is in the translated frame.
GradientSample solve_u_reflection(const BipolarFrame& frame, double k, const HarmonicDiskField& H,
                                  BipolarPoint p, const ReflectionSeriesConfig& cfg = {},
                                  Region region = Region::Auto);

/// Dirichlet solution v = H~_d + sum tau^{n+1} [...].
GradientSample solve_v_reflection(const BipolarFrame& frame, double k,
                                  const HarmonicDiskField& H_d, BipolarPoint p,
                                  const ReflectionSeriesConfig& cfg = {},
                                  Region region = Region::Auto);

enum class DensitySide { Inner, Outer };

/// Layer densities of u = S_dD[phi_i] + S_dOmega[phi_e] in the translated frame,
/// at the boundary point with angle theta:
///   inner  2 tau sum (-tau)^n h(xi_i)/h(xi_{i,n}) dH~/dnu (xi_{i,n})
///   outer  -2 g~ + 2 tau sum (-tau)^n h(xi_e)/h(xi_{e,n+1}) dH~/dnu (xi_{e,n+1})
/// with nu the outward normal of the level circle where dH~/dnu is taken. The
/// outer terms come from an odd number of reflections, which reverses the
/// xi direction; hence the sign opposite to the inner series.
double density_series(const BipolarFrame& frame, double k, const HarmonicDiskField& H,
                      DensitySide side, double theta, const ReflectionSeriesConfig& cfg = {});

/// S_dD[phi_i] + S_dOmega[phi_e] and its gradient at x (translated frame) from
/// the density series, by the trapezoid rule in theta with `points` nodes per
/// circle. The representation holds up to an additive constant.
struct LayerPotentialValue {
  double value = 0.0;
  Vec2 grad;
};

LayerPotentialValue single_layer_reconstruction(const BipolarFrame& frame, double k,
                                                const HarmonicDiskField& H, CartesianPoint x,
                                                std::size_t points = 2048,
                                                const ReflectionSeriesConfig& cfg = {});

/// S_dB[dv/dnu](x) by an m-point trapezoid rule minus its closed form
/// (-v/2 + v(c)/2 inside, -R[v]/2 + v(c)/2 outside, R the reflection across dB).
/// `v` is any harmonic polynomial; its disk is the disk B.
double disk_layer_identity_check(const HarmonicDiskField& v, CartesianPoint x,
                                 std::size_t m = 512);

}  // namespace gapgrad
