#pragma once

#include "istc/gains.hpp"

namespace istc {

/// Transformed closed-loop error coordinates: z is the modified sliding
/// variable x - T(w_{k-1} + v), q is the disturbance-tracking error
/// v + w_{k-2}.
struct ErrorState {
    double z = 0.0;
    double q = 0.0;

    friend bool operator==(const ErrorState&, const ErrorState&) = default;
};

/// One step of the (z, q) error recursion under the unsaturated law, driven
/// by the disturbance difference quotient delta = (w_{k-2} - w_{k-3})/T.
/// Callers are responsible for |delta| <= L.
ErrorState error_dynamics_step(ErrorState e, double delta, const Gains& gains);

}  // namespace istc
