#include "istc/disturbances.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace istc::sim {

PiecewiseLinearSignal sawtooth_disturbance(double L, double W, double T) {
    if (!(L > 0.0) || !(W > 0.0) || !(T > 0.0))
        throw std::invalid_argument("sawtooth_disturbance: L, W, T must be positive");
    const double quarter = W / L;  // time from a zero crossing to a peak
    std::vector<PiecewiseLinearSignal::Breakpoint> pts{
        {T + quarter, W},
        {T + 3.0 * quarter, -W},
    };
    return PiecewiseLinearSignal::periodic(std::move(pts), 4.0 * quarter);
}

PiecewiseLinearSignal adversary_signal(int K, double L, double T, int q) {
    if (K < 1)
        throw std::domain_error("adversary_signal: K must be >= 1");
    if (!(L > 0.0) || !(T > 0.0))
        throw std::invalid_argument("adversary_signal: L and T must be positive");
    if (q != 1 && q != -1)
        throw std::invalid_argument("adversary_signal: q must be +1 or -1");
    const int M = K + 1;
    const double base = -0.5 * q * L * T;
    std::vector<PiecewiseLinearSignal::Breakpoint> pts;
    pts.reserve(static_cast<std::size_t>(M) + 2);
    double sign = 1.0;
    for (int j = 0; j <= M; ++j) {
        pts.push_back({sample_time(j, T), base * sign});
        sign = -sign;
    }
    // sign now equals (-1)^{M+1}; the ramp ends at 3 * base * (-1)^M
    pts.push_back({sample_time(M + 1, T), 3.0 * base * (-sign)});
    return PiecewiseLinearSignal::from_breakpoints(std::move(pts));
}

AdversaryResult adversary_disturbance(int K, double L, double T, const Trajectory& probe,
                                      double amplitude_budget) {
    if (K < 1)
        throw std::domain_error("adversary_disturbance: K must be >= 1");
    if (!(L > 0.0) || !(T > 0.0))
        throw std::invalid_argument("adversary_disturbance: L and T must be positive");
    if (amplitude_budget < 1.5 * L * T)
        throw std::domain_error(
            "adversary_disturbance: amplitude budget W below 3LT/2; construction unavailable");
    if (probe.records.size() < static_cast<std::size_t>(K) + 2)
        throw std::domain_error(
            "adversary_disturbance: probe transcript must reach step K+1");
    const StepRecord& a = probe.records[static_cast<std::size_t>(K)];
    const StepRecord& b = probe.records[static_cast<std::size_t>(K) + 1];
    const double criterion = 2.0 * b.x - a.x + T * (b.u - a.u);
    const int parity = (K % 2 == 0) ? 1 : -1;
    const int q = criterion >= 0.0 ? parity : -parity;
    return {adversary_signal(K, L, T, q), q};
}

}  // namespace istc::sim
