#pragma once

#include "istc/piecewise_linear.hpp"
#include "istc/simulate.hpp"

#include <limits>

namespace istc::analysis {

/// Steady-state detection report. K* is the first step from which the
/// identity x_k = T(w_{k-1} - w_{k-2}) holds within 1e-9 through the end of
/// the run; the remaining fields summarize the tail k >= K*.
struct ConvergenceReport {
    bool converged = false;
    long k_star = -1;
    double max_abs_x_after = std::numeric_limits<double>::quiet_NaN();
    double max_x_sup_after = std::numeric_limits<double>::quiet_NaN();
    double v_identity_residual = std::numeric_limits<double>::quiet_NaN();
    bool lt2_bound = false;  ///< both maxima within L*T^2 (+1e-12 slack)
};

/// Identity tolerance used for K* detection.
inline constexpr double kIdentityTolerance = 1e-9;

/// Evaluates the steady-state identities on a closed-loop run. `w` must be
/// the disturbance the trajectory was generated with; sample averages before
/// step 0 use the convention w_{-m} = w_0.
ConvergenceReport convergence_metrics(const sim::Trajectory& traj,
                                      const sim::PiecewiseLinearSignal& w,
                                      double L, double T);

}  // namespace istc::analysis
