#pragma once

#include "gapgrad/geometry.hpp"

namespace gapgrad {

/// Argument pair for L and P: |z| <= 1 - 1e-12 and beta > 0.
struct LerchEvalRequest {
  Complex z;
  double beta = 1.0;

  void validate() const;
};

/// L(z; beta) = -int_0^inf z e^{-(beta+1)t} / (1 + z e^{-t}) dt
///            = sum_{m>=1} (-z)^m / (beta + m).
/// Uses the power series for |z| < 0.8 and adaptive quadrature beyond.
Complex lerch_L(Complex z, double beta);
Complex lerch_L_series(Complex z, double beta);
Complex lerch_L_quadrature(Complex z, double beta);

/// P(z; beta) = -z dL/dz = int_0^inf z e^{-(beta+1)t} / (1 + z e^{-t})^2 dt
///            = sum_{m>=1} (-1)^{m-1} m z^m / (beta + m).
Complex kernel_P(Complex z, double beta);
Complex kernel_P_series(Complex z, double beta);
Complex kernel_P_quadrature(Complex z, double beta);

/// 1 / (2 beta (cosh s + cos theta)), the pointwise bound on |P(e^{-s+i theta})|.
double P_pointwise_bound(double s, double theta, double beta);

/// (s2 - s1) / (2 (cosh s1 + cos theta)), the bound on the s-increment of P.
double P_increment_bound(double s1, double s2, double theta);

/// int_0^inf e^{-beta t} / (2 (cosh(s+t) + cos theta)) dt, the refined bound
/// on |P(e^{-s - i theta})|; evaluated by quadrature.
double P_refined_bound(double s, double theta, double beta);

/// Value and bipolar partial derivatives of a complex function of (xi, theta).
struct ComplexPartials {
  Complex value;
  Complex d_xi;
  Complex d_theta;
};

/// Singular function q_d (conductivity k > 1, Dirichlet problem):
///   shell: L(e^{-(2 xi_i - 2 xi_e + xi) - i theta}) - L(e^{-(2 xi_i - xi) - i theta})
///   core:  L(e^{-(2 xi_i - 2 xi_e + xi) - i theta}) - L(e^{-xi - i theta})
/// Throws DomainError on the inclusion boundary (no side given) or outside
/// the outer disk.
Complex q_d(const BipolarFrame& frame, BipolarPoint p, double beta);

/// Singular function q (conductivity k < 1, Neumann problem):
///   shell: -L(e^{-xi - 2(xi_i - xi_e) - i theta}) - L(e^{xi - 2 xi_i - i theta})
///   core:  -L(e^{-xi - 2(xi_i - xi_e) - i theta}) - L(e^{-xi - i theta})
Complex q_u(const BipolarFrame& frame, BipolarPoint p, double beta);

/// q_d / q_u with their xi and theta derivatives. `region` selects the branch;
/// with an explicit region the one-sided limit on the inclusion boundary is
/// allowed.
ComplexPartials q_d_partials(const BipolarFrame& frame, BipolarPoint p, double beta,
                             Region region = Region::Auto);
ComplexPartials q_u_partials(const BipolarFrame& frame, BipolarPoint p, double beta,
                             Region region = Region::Auto);

}  // namespace gapgrad
