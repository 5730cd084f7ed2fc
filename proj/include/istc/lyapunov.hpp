#pragma once

#include "istc/gains.hpp"

namespace istc::analysis {

/// Parameters of the quasiconvex Lyapunov function V_alpha for the (z, q)
/// error dynamics.
class LyapunovParams {
public:
    LyapunovParams(double alpha, double k1, double k2, double L);

    double alpha() const noexcept { return alpha_; }
    double k1() const noexcept { return k1_; }
    double k2() const noexcept { return k2_; }
    double L() const noexcept { return L_; }

    /// true iff k1 > sqrt(k2 + L)/alpha and k2 > L, the strict-Lyapunov range.
    bool strict_lyapunov() const noexcept { return strict_; }

private:
    double alpha_;
    double k1_;
    double k2_;
    double L_;
    bool strict_;
};

/// Set-membership verdict; member iff margin <= 0. The margin is the largest
/// constraint violation (a signed-distance surrogate).
struct SetVerdict {
    bool member;
    double margin;
};

/// Three-branch Lyapunov value V_alpha(z, q); zero exactly at the origin.
double lyapunov_value(double z, double q, const LyapunovParams& p);

/// Sublevel set Omega_{alpha,c} via the pair of inequalities
/// |12 alpha^2 k1^2 z - 2 c q| <= c^2 - 3 q^2 and |q| <= c/3.
SetVerdict sublevel_member(double z, double q, double c, const LyapunovParams& p);

/// Dead-beat capture set Omega = { max(|z|, |z + T q|) <= (k2 - L) T^2 }.
SetVerdict omega_member(double z, double q, double k2, double L, double T);

struct MSetVerdict {
    bool in_m1;  ///< |v| <= U
    bool in_m2;  ///< in_m1 and |z| <= (U + W + delta)^2 / k1^2
    bool in_m3;  ///< in_m2 and |u_bar| <= U
    bool gain_condition;  ///< k1 > sqrt(2 k2 (U+W+delta) / (U-W-k2 T))
    double k1_threshold;
};

/// Nested invariant sets of the conditioned closed loop. Requires gains with
/// u_max and U > W + k2 T.
MSetVerdict m_sets_member(double z, double v, double u_bar, const Gains& gains,
                          double W, double delta_margin);

/// Smallest alpha in {0.9, 0.95, 0.99} with k1 > sqrt(k2 + L)/alpha.
double default_alpha(double k1, double k2, double L);

/// Default M-set slack: min(0.01 U, (U - W - k2 T)/10).
double default_delta_margin(const Gains& gains, double W);

}  // namespace istc::analysis
