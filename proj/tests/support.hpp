#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "gapgrad/geometry.hpp"

namespace gapgrad::test {

inline constexpr double kPi = std::numbers::pi;

inline BipolarFrame reference_frame() { return derive_frame({2.0, 5.0, 1.0 / 50.0}); }

/// Uniform points inside the un-translated outer disk, returned in bipolar
/// coordinates, kept away from the inclusion boundary.
inline std::vector<BipolarPoint> random_interior(const BipolarFrame& f, std::size_t n,
                                                 unsigned seed) {
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

inline double rel_diff(Vec2 a, Vec2 b, double scale) {
  return norm(a - b) / std::max(norm(b), scale);
}

}  // namespace gapgrad::test
