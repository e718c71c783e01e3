#pragma once

#include "gapgrad/geometry.hpp"

namespace gapgrad {

/// tau = (k - 1) / (k + 1); throws DomainError unless k > 0.
double tau(double k);

/// beta = r_* (-ln|tau|) / (4 sqrt(eps)). |tau| is used for k < 1 as well.
/// Throws DomainError for k = 1 (beta would be infinite) or k <= 0.
double beta(const BipolarFrame& frame, double k);

}  // namespace gapgrad
