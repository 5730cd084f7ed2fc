#include "istc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace istc::analysis {

ConvergenceReport convergence_metrics(const sim::Trajectory& traj,
                                      const sim::PiecewiseLinearSignal& w,
                                      double L, double T) {
    if (!(T > 0.0) || !(L >= 0.0))
        throw std::invalid_argument("convergence_metrics: need T > 0 and L >= 0");
    ConvergenceReport rep;
    const auto& rec = traj.records;
    if (rec.empty())
        return rep;
    if (std::fabs(rec.front().w_avg - sim::average_disturbance(w, 0, T)) >
        1e-12 * std::max(1.0, std::fabs(rec.front().w_avg)))
        throw std::invalid_argument(
            "convergence_metrics: trajectory does not match the disturbance");

    const long n = static_cast<long>(rec.size());
    const auto w_at = [&](long m) {
        return rec[static_cast<std::size_t>(std::max(m, 0L))].w_avg;
    };

    long k_star = n;
    for (long k = n - 1; k >= 0; --k) {
        const double target = T * (w_at(k - 1) - w_at(k - 2));
        if (std::fabs(rec[static_cast<std::size_t>(k)].x - target) <= kIdentityTolerance)
            k_star = k;
        else
            break;
    }
    if (k_star == n)
        return rep;

    rep.converged = true;
    rep.k_star = k_star;
    double max_x = 0.0;
    double max_sup = 0.0;
    double max_v = 0.0;
    for (long k = k_star; k < n; ++k) {
        const auto& r = rec[static_cast<std::size_t>(k)];
        max_x = std::max(max_x, std::fabs(r.x));
        max_sup = std::max(max_sup, r.x_sup);
        max_v = std::max(max_v, std::fabs(r.v + w_at(k - 2)));
    }
    rep.max_abs_x_after = max_x;
    rep.max_x_sup_after = max_sup;
    rep.v_identity_residual = max_v;
    const double band = L * T * T + 1e-12;
    rep.lt2_bound = max_x <= band && max_sup <= band;
    return rep;
}

}  // namespace istc::analysis
