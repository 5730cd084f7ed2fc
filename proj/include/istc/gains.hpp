#pragma once

#include <optional>

namespace istc {

/// Controller parameters shared by all super-twisting step laws.
///
/// `u_max` selects the saturated (conditioned) law; leave it empty for the
/// unsaturated laws. A formally unbounded saturated law may be expressed with
/// u_max = +infinity.
class Gains {
public:
    Gains(double k1, double k2, double T,
          std::optional<double> u_max = std::nullopt);

    double k1() const noexcept { return k1_; }
    double k2() const noexcept { return k2_; }
    double T() const noexcept { return T_; }
    const std::optional<double>& u_max() const noexcept { return u_max_; }
    bool saturated() const noexcept { return u_max_.has_value(); }

    /// lambda = k2 - k1^2/4, cached at construction.
    double lambda() const noexcept { return lambda_; }

    /// k2*T^2; |x| at or below this selects the dead-beat branch. Cached so
    /// that every branch comparison uses the identical value.
    double deadbeat_threshold() const noexcept { return deadbeat_threshold_; }

    friend bool operator==(const Gains&, const Gains&) = default;

private:
    double k1_;
    double k2_;
    double T_;
    std::optional<double> u_max_;
    double lambda_;
    double deadbeat_threshold_;
};

/// Convergence conditions of the unsaturated law: k1 > sqrt(k2 + L), k2 > L.
bool meets_unsaturated_conditions(const Gains& gains, double L);

/// Convergence conditions of the conditioned law:
/// U > W + k2 T, k1 > sqrt(2 k2 (U + W) / (U - W - k2 T)), k2 > L.
bool meets_saturated_conditions(const Gains& gains, double L, double W);

/// Controller state: the integrator value.
struct ControllerState {
    double v = 0.0;
};

/// Result of one controller step.
struct ControlOutput {
    double u;       ///< applied input
    double v_next;  ///< next integrator value
    std::optional<double> u_hat;  ///< pre-saturation input (conditioned law only)
};

}  // namespace istc
