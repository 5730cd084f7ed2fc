#include "istc/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace istc::sim {

PiecewiseLinearSignal::PiecewiseLinearSignal(std::vector<Breakpoint> points,
                                             double period)
    : points_(std::move(points)), period_(period) {
    if (points_.empty())
        throw std::invalid_argument("PiecewiseLinearSignal: at least one breakpoint required");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].t) || !std::isfinite(points_[i].value))
            throw std::invalid_argument("PiecewiseLinearSignal: non-finite breakpoint");
        if (i > 0 && !(points_[i].t > points_[i - 1].t))
            throw std::invalid_argument(
                "PiecewiseLinearSignal: breakpoint times must be strictly ascending");
    }
    if (period_ > 0.0) {
        const double span = points_.back().t - points_.front().t;
        if (!std::isfinite(period_) || !(span < period_))
            throw std::invalid_argument(
                "PiecewiseLinearSignal: period must exceed the breakpoint span");
    }

    amplitude_bound_ = 0.0;
    for (const auto& p : points_)
        amplitude_bound_ = std::max(amplitude_bound_, std::fabs(p.value));
    slope_bound_ = 0.0;
    for (std::size_t i = 1; i < points_.size(); ++i)
        slope_bound_ = std::max(slope_bound_,
                                std::fabs((points_[i].value - points_[i - 1].value) /
                                          (points_[i].t - points_[i - 1].t)));
    if (period_ > 0.0) {
        const double wrap_h = points_.front().t + period_ - points_.back().t;
        slope_bound_ = std::max(slope_bound_,
                                std::fabs((points_.front().value - points_.back().value) / wrap_h));
        period_integral_ = base_integral(period_);
    }
}

PiecewiseLinearSignal PiecewiseLinearSignal::constant(double value) {
    return PiecewiseLinearSignal({{0.0, value}}, 0.0);
}

PiecewiseLinearSignal PiecewiseLinearSignal::from_breakpoints(std::vector<Breakpoint> points) {
    return PiecewiseLinearSignal(std::move(points), 0.0);
}

PiecewiseLinearSignal PiecewiseLinearSignal::periodic(std::vector<Breakpoint> points,
                                                      double period) {
    if (!(period > 0.0))
        throw std::invalid_argument("PiecewiseLinearSignal: period must be positive");
    return PiecewiseLinearSignal(std::move(points), period);
}

double PiecewiseLinearSignal::reduced_phase(double t) const {
    // Compensated reduction of t into [0, period): fmod is exact, but t - t0
    // rounds with an error of order ulp(t) which would make the phase drift
    // for large t. A two-sum recovers that error so it can be folded back in
    // after the reduction.
    const double t0 = points_.front().t;
    const double diff = t - t0;
    const double a1 = diff + t0;
    const double b1 = diff - a1;
    const double err = (t - a1) + (-t0 - b1);
    double local = std::fmod(diff, period_);
    local += err;
    if (local < 0.0)
        local += period_;
    if (local >= period_)
        local -= period_;
    if (local < 0.0 || local >= period_)
        local = 0.0;
    return local;
}

double PiecewiseLinearSignal::value_in_base(double tau) const {
    // tau lies in [t_front, t_front + period]
    if (tau <= points_.front().t)
        return points_.front().value;
    if (tau >= points_.back().t) {
        const double t_end = points_.front().t + period_;
        if (tau >= t_end)
            return points_.front().value;
        const auto& last = points_.back();
        return last.value + (points_.front().value - last.value) *
                                ((tau - last.t) / (t_end - last.t));
    }
    const auto it = std::upper_bound(
        points_.begin(), points_.end(), tau,
        [](double t, const Breakpoint& b) { return t < b.t; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    return lo.value + (hi.value - lo.value) * ((tau - lo.t) / (hi.t - lo.t));
}

double PiecewiseLinearSignal::base_integral(double phi) const {
    // integral of the base shape over [t_front, t_front + phi], phi in [0, period]
    const double t_end = points_.front().t + phi;
    double acc = 0.0;
    double prev_t = points_.front().t;
    double prev_v = points_.front().value;
    for (std::size_t i = 1; i < points_.size() && points_[i].t < t_end; ++i) {
        acc += 0.5 * (prev_v + points_[i].value) * (points_[i].t - prev_t);
        prev_t = points_[i].t;
        prev_v = points_[i].value;
    }
    const double v_end = value_in_base(t_end);
    acc += 0.5 * (prev_v + v_end) * (t_end - prev_t);
    return acc;
}

double PiecewiseLinearSignal::value(double t) const {
    if (period_ > 0.0)
        return value_in_base(points_.front().t + reduced_phase(t));
    if (t <= points_.front().t)
        return points_.front().value;
    if (t >= points_.back().t)
        return points_.back().value;
    const auto it = std::upper_bound(
        points_.begin(), points_.end(), t,
        [](double tv, const Breakpoint& b) { return tv < b.t; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    return lo.value + (hi.value - lo.value) * ((t - lo.t) / (hi.t - lo.t));
}

std::vector<double> PiecewiseLinearSignal::kinks_between(double t0, double t1) const {
    std::vector<double> out;
    if (!(t1 > t0))
        return out;
    if (period_ > 0.0) {
        for (const auto& bp : points_) {
            double j = std::ceil((t0 - bp.t) / period_) - 1.0;
            for (;; j += 1.0) {
                const double t = bp.t + j * period_;
                if (t >= t1)
                    break;
                if (t > t0)
                    out.push_back(t);
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    } else {
        for (const auto& bp : points_)
            if (bp.t > t0 && bp.t < t1)
                out.push_back(bp.t);
    }
    return out;
}

double PiecewiseLinearSignal::integral(double t0, double t1) const {
    if (t1 < t0)
        throw std::domain_error("PiecewiseLinearSignal::integral: t1 < t0");
    if (t1 == t0)
        return 0.0;
    if (period_ > 0.0) {
        // Map both ends into the base period; kinks are exact breakpoints
        // there, so the piecewise trapezoids do not see replica rounding.
        const double phi0 = reduced_phase(t0);
        const double phi1 = reduced_phase(t1);
        const double wraps = ((t1 - t0) - (phi1 - phi0)) / period_;
        const double n = std::round(wraps);
        return n * period_integral_ + (base_integral(phi1) - base_integral(phi0));
    }
    double acc = 0.0;
    double prev_t = t0;
    double prev_v = value(t0);
    for (double tk : kinks_between(t0, t1)) {
        const double vk = value(tk);
        acc += 0.5 * (prev_v + vk) * (tk - prev_t);
        prev_t = tk;
        prev_v = vk;
    }
    acc += 0.5 * (prev_v + value(t1)) * (t1 - prev_t);
    return acc;
}

}  // namespace istc::sim
