#pragma once

#include <vector>

namespace istc::sim {

/// Piecewise-linear signal defined by breakpoints with strictly ascending
/// times. Non-periodic signals hold their first value before the first
/// breakpoint and their last value after the last one; periodic signals store
/// one period of breakpoints and repeat it with the given period.
class PiecewiseLinearSignal {
public:
    struct Breakpoint {
        double t;
        double value;

        friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
    };

    static PiecewiseLinearSignal constant(double value);
    static PiecewiseLinearSignal from_breakpoints(std::vector<Breakpoint> points);
    static PiecewiseLinearSignal periodic(std::vector<Breakpoint> points, double period);

    double value(double t) const;

    /// Exact integral over [t0, t1]: trapezoids over kink-split pieces, which
    /// is exact because the signal is affine between kinks.
    double integral(double t0, double t1) const;

    /// Kink instants strictly inside (t0, t1), ascending without duplicates.
    std::vector<double> kinks_between(double t0, double t1) const;

    /// Largest segment slope magnitude (L_sig).
    double slope_bound() const noexcept { return slope_bound_; }
    /// Largest breakpoint magnitude (W_sig).
    double amplitude_bound() const noexcept { return amplitude_bound_; }

    bool is_periodic() const noexcept { return period_ > 0.0; }
    double period() const noexcept { return period_; }
    const std::vector<Breakpoint>& breakpoints() const noexcept { return points_; }

    friend bool operator==(const PiecewiseLinearSignal&,
                           const PiecewiseLinearSignal&) = default;

private:
    PiecewiseLinearSignal(std::vector<Breakpoint> points, double period);

    double reduced_phase(double t) const;
    double value_in_base(double tau) const;
    double base_integral(double phi) const;

    std::vector<Breakpoint> points_;
    double period_ = 0.0;  // 0 = not periodic
    double slope_bound_ = 0.0;
    double amplitude_bound_ = 0.0;
    double period_integral_ = 0.0;
};

}  // namespace istc::sim
