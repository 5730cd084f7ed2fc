#pragma once

#include "istc/gains.hpp"

namespace istc {

/// Unique solution z of the scalar generalized equation
///
///     z  in  offset - T k1 |z|^{1/2} sign(z) - T^2 k2 [z]^0
///
/// where [z]^0 is the set-valued sign. Returns 0 when |offset| <= k2 T^2,
/// and (sqrt(|offset| - lambda T^2) - T k1/2)^2 sign(offset) otherwise.
double resolvent(double offset, const Gains& gains);

}  // namespace istc
