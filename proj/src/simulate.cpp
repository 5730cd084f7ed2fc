#include "istc/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace istc::sim {

IntegrationResult integrate_interval(double x0, double u, const PiecewiseLinearSignal& w,
                                     double t0, double t1) {
    if (!(t1 > t0))
        throw std::domain_error("integrate_interval: t1 must exceed t0");
    double x = x0;
    double sup = std::fabs(x0);
    double prev_t = t0;
    double prev_v = w.value(t0);
    std::vector<double> cuts = w.kinks_between(t0, t1);
    cuts.push_back(t1);
    for (double tk : cuts) {
        const double h = tk - prev_t;
        const double wa = prev_v;
        const double wb = w.value(tk);
        const double slope = (wb - wa) / h;
        const double drift = u + wa;
        if (slope != 0.0) {
            const double tau = -drift / slope;
            if (tau > 0.0 && tau < h)
                sup = std::max(sup, std::fabs(x + drift * tau + 0.5 * slope * tau * tau));
        }
        x += (u + 0.5 * (wa + wb)) * h;
        sup = std::max(sup, std::fabs(x));
        prev_t = tk;
        prev_v = wb;
    }
    // The endpoint from the single exact quadrature; the per-piece walk above
    // only tracks the supremum candidates.
    const double x1 = x0 + u * (t1 - t0) + w.integral(t0, t1);
    sup = std::max(sup, std::fabs(x1));
    return {x1, sup};
}

double average_disturbance(const PiecewiseLinearSignal& w, long k, double T) {
    if (!(T > 0.0))
        throw std::invalid_argument("average_disturbance: T must be positive");
    return w.integral(sample_time(k, T), sample_time(k + 1, T)) / T;
}

Trajectory run_closed_loop(ControllerKind controller, const Gains& gains,
                           const PiecewiseLinearSignal& w, double x0, double v0,
                           long n_steps) {
    if (n_steps < 1)
        throw std::invalid_argument("run_closed_loop: n_steps must be >= 1");
    Trajectory traj;
    traj.records.reserve(static_cast<std::size_t>(n_steps));
    const double T = gains.T();
    double x = x0;
    ControllerState state{v0};
    for (long k = 0; k < n_steps; ++k) {
        const double t = sample_time(k, T);
        const ControlOutput out = controller_step(controller, x, state, gains);
        const double w_k = average_disturbance(w, k, T);
        const IntegrationResult flow =
            integrate_interval(x, out.u, w, t, sample_time(k + 1, T));
        traj.records.push_back({k, t, x, out.u, state.v, w_k, flow.x_sup});
        if (!std::isfinite(flow.x1) || !std::isfinite(out.v_next))
            throw std::runtime_error("run_closed_loop: non-finite state after step k=" +
                                     std::to_string(k));
        x = flow.x1;
        state.v = out.v_next;
    }
    return traj;
}

}  // namespace istc::sim
