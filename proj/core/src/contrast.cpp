#include "gapgrad/contrast.hpp"

#include <cmath>

namespace gapgrad {

double tau(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("conductivity k must be positive");
  return (k - 1.0) / (k + 1.0);
}

double beta(const BipolarFrame& frame, double k) {
  const double t = tau(k);
  if (t == 0.0) throw DomainError("beta is infinite at k = 1");
  return frame.r_star * (-std::log(std::abs(t))) / (4.0 * std::sqrt(frame.geometry.eps));
}

}  // namespace gapgrad
