#pragma once

#include "istc/controllers.hpp"
#include "istc/piecewise_linear.hpp"

#include <vector>

namespace istc::sim {

/// Uniform sampling grid instant t = k*T.
inline double sample_time(long k, double T) noexcept {
    return static_cast<double>(k) * T;
}

struct IntegrationResult {
    double x1;     ///< state at t1
    double x_sup;  ///< max |x(t)| over [t0, t1]
};

/// Exact flow of xdot = u + w(t) with constant u over [t0, t1]. The state is
/// quadratic between kinks of w, so both the endpoint and the intersample
/// supremum are evaluated in closed form.
IntegrationResult integrate_interval(double x0, double u, const PiecewiseLinearSignal& w,
                                     double t0, double t1);

/// Sample-averaged disturbance w_k = (1/T) * integral over [kT, (k+1)T].
double average_disturbance(const PiecewiseLinearSignal& w, long k, double T);

struct StepRecord {
    long k;
    double t;      ///< kT
    double x;      ///< sample x_k
    double u;      ///< applied input u_k
    double v;      ///< controller state v_k
    double w_avg;  ///< sample-averaged disturbance w_k
    double x_sup;  ///< max |x(t)| over [kT, (k+1)T]

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct Trajectory {
    std::vector<StepRecord> records;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Deterministic closed-loop run: sample -> control -> hold -> exact flow.
/// Aborts with a diagnostic step index when the state turns non-finite.
Trajectory run_closed_loop(ControllerKind controller, const Gains& gains,
                           const PiecewiseLinearSignal& w, double x0, double v0,
                           long n_steps);

}  // namespace istc::sim
