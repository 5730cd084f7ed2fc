#pragma once

#include "istc/gains.hpp"

#include <string_view>

namespace istc {

enum class ControllerKind {
    implicit_stc,     ///< proposed implicit super-twisting law, unsaturated
    conditioned_stc,  ///< anti-windup variant for saturated actuation
    brogliato,        ///< baseline implicit super-twisting law
    explicit_euler,   ///< forward-Euler super-twisting law
    fosm,             ///< first-order sliding mode u = -sat_c(x/T)
};

ControllerKind controller_kind_from_string(std::string_view name);
std::string_view to_string(ControllerKind kind);

/// Proposed implicit super-twisting law in explicit form. Rejects gains that
/// carry u_max (use conditioned_stc_step for those).
ControlOutput implicit_stc_step(double x, ControllerState state, const Gains& gains);

/// Conditioned super-twisting law: pre-saturation value u_hat, applied input
/// u = sat_{u_max}(u_hat), and the averaging/sign integrator update.
ControlOutput conditioned_stc_step(double x, ControllerState state, const Gains& gains);

/// Baseline implicit super-twisting law, solved exactly through the shared
/// resolvent with offset x + T v.
ControlOutput brogliato_stc_step(double x, ControllerState state, const Gains& gains);

/// Super-twisting law under explicit Euler discretization.
ControlOutput explicit_euler_stc_step(double x, ControllerState state, const Gains& gains);

/// First-order sliding mode law u = -sat_c(x/T).
double implicit_fosm_step(double x, double c, double T);

/// Dispatch on kind. For ControllerKind::fosm the saturation level c is taken
/// from gains.u_max and the integrator state is passed through unchanged.
ControlOutput controller_step(ControllerKind kind, double x, ControllerState state,
                              const Gains& gains);

}  // namespace istc
