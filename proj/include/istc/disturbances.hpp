#pragma once

#include "istc/piecewise_linear.hpp"
#include "istc/simulate.hpp"

#include <limits>

namespace istc::sim {

/// Periodic sawtooth with slope magnitude exactly L and amplitude exactly W,
/// phased so that the signal crosses zero rising at t = T. Period is 4W/L.
PiecewiseLinearSignal sawtooth_disturbance(double L, double W, double T);

/// Worst-case disturbance for a fixed sign choice q in {-1, +1}: zero sample
/// averages w_0..w_K, then w_{K+1} = (-1)^K q L T. Amplitude stays within
/// 3LT/2 and the slope within L.
PiecewiseLinearSignal adversary_signal(int K, double L, double T, int q);

struct AdversaryResult {
    PiecewiseLinearSignal signal;
    int q;  ///< chosen sign, -1 or +1
};

/// Picks the adversarial sign from a probe run against adversary_signal(K, L,
/// T, +1). The probe samples x_K, x_{K+1}, u_K, u_{K+1} do not depend on the
/// sign, so replaying the returned signal yields |x_{K+2}| >= L T^2.
/// Rejects amplitude budgets W < 3LT/2, for which the construction does not
/// apply.
AdversaryResult adversary_disturbance(
    int K, double L, double T, const Trajectory& probe,
    double amplitude_budget = std::numeric_limits<double>::infinity());

}  // namespace istc::sim
