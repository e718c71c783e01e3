#include "gapgrad/sample.hpp"

namespace gapgrad {

GradientSample make_sample(const BipolarFrame& frame, BipolarPoint p, double value, Vec2 grad) {
  const LocalBasis b = basis_vectors(frame, p);
  GradientSample s;
  s.point = to_cartesian(frame, p);
  s.bipolar = p;
  s.value = value;
  s.grad = grad;
  s.grad_xi = dot(grad, b.e_xi);
  s.grad_theta = dot(grad, b.e_theta);
  return s;
}

}  // namespace gapgrad
