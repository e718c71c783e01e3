#pragma once

#include <cstddef>

#include "gapgrad/geometry.hpp"

namespace gapgrad {

/// A field evaluation: the point in both coordinate systems, the value, and
/// the gradient in Cartesian and (e_xi, e_theta) components.
struct GradientSample {
  CartesianPoint point;
  BipolarPoint bipolar;
  double value = 0.0;
  Vec2 grad;
  double grad_xi = 0.0;
  double grad_theta = 0.0;
  /// Series solvers: number of terms summed and whether the tail bound met
  /// the tolerance before the term cap.
  std::size_t terms = 0;
  bool converged = true;
};

/// Fills point, basis components and value from a Cartesian gradient.
GradientSample make_sample(const BipolarFrame& frame, BipolarPoint p, double value, Vec2 grad);

}  // namespace gapgrad
