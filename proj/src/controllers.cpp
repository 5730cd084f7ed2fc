#include "istc/controllers.hpp"

#include "istc/math_util.hpp"
#include "istc/resolvent.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace istc {

namespace {

// Branch formula shared by the unsaturated law and the pre-saturation value
// of the conditioned law. Ties |x| = k2 T^2 select the dead-beat branch; both
// branches coincide there.
double proposed_input(double x, double v, const Gains& g) {
    if (std::fabs(x) <= g.deadbeat_threshold())
        return v - 2.0 * x / g.T();
    const double lam = g.lambda();
    double radicand = std::fabs(x) - lam * g.T() * g.T();
    if (radicand < 0.0)
        radicand = 0.0;
    return v - (2.0 * lam * g.T() + g.k1() * std::sqrt(radicand)) * signum(x);
}

double proposed_v_next(double x, double v, const Gains& g) {
    if (std::fabs(x) <= g.deadbeat_threshold())
        return v - x / g.T();
    return v - g.T() * g.k2() * signum(x);
}

}  // namespace

ControllerKind controller_kind_from_string(std::string_view name) {
    if (name == "implicit_stc") return ControllerKind::implicit_stc;
    if (name == "conditioned_stc") return ControllerKind::conditioned_stc;
    if (name == "brogliato") return ControllerKind::brogliato;
    if (name == "explicit_euler") return ControllerKind::explicit_euler;
    if (name == "fosm") return ControllerKind::fosm;
    throw std::invalid_argument("unknown controller: " + std::string(name));
}

std::string_view to_string(ControllerKind kind) {
    switch (kind) {
    case ControllerKind::implicit_stc: return "implicit_stc";
    case ControllerKind::conditioned_stc: return "conditioned_stc";
    case ControllerKind::brogliato: return "brogliato";
    case ControllerKind::explicit_euler: return "explicit_euler";
    case ControllerKind::fosm: return "fosm";
    }
    throw std::logic_error("invalid ControllerKind");
}

ControlOutput implicit_stc_step(double x, ControllerState state, const Gains& g) {
    if (g.saturated())
        throw std::invalid_argument(
            "implicit_stc_step: gains carry u_max; use conditioned_stc_step");
    return {proposed_input(x, state.v, g), proposed_v_next(x, state.v, g),
            std::nullopt};
}

ControlOutput conditioned_stc_step(double x, ControllerState state, const Gains& g) {
    if (!g.saturated())
        throw std::invalid_argument("conditioned_stc_step: gains.u_max required");
    const double u_hat = proposed_input(x, state.v, g);
    const double u = saturate(*g.u_max(), u_hat);
    const double spread = state.v - u;
    double v_next;
    if (std::fabs(spread) <= 2.0 * g.k2() * g.T())
        v_next = 0.5 * (state.v + u);
    else
        v_next = state.v - g.T() * g.k2() * signum(spread);
    return {u, v_next, u_hat};
}

ControlOutput brogliato_stc_step(double x, ControllerState state, const Gains& g) {
    if (g.saturated())
        throw std::invalid_argument(
            "brogliato_stc_step: gains carry u_max; law is unsaturated");
    const double sliding = resolvent(x + g.T() * state.v, g);
    if (sliding == 0.0) {
        const double u = -x / g.T();
        return {u, u, std::nullopt};
    }
    const double v_next = state.v - g.k2() * g.T() * signum(sliding);
    return {(sliding - x) / g.T(), v_next, std::nullopt};
}

ControlOutput explicit_euler_stc_step(double x, ControllerState state, const Gains& g) {
    if (g.saturated())
        throw std::invalid_argument(
            "explicit_euler_stc_step: gains carry u_max; law is unsaturated");
    const double u = -g.k1() * signed_sqrt(x) + state.v;
    const double v_next = state.v - g.T() * g.k2() * signum(x);
    return {u, v_next, std::nullopt};
}

double implicit_fosm_step(double x, double c, double T) {
    if (!(c > 0.0))
        throw std::invalid_argument("implicit_fosm_step: c must be positive");
    if (!(T > 0.0))
        throw std::invalid_argument("implicit_fosm_step: T must be positive");
    return -saturate(c, x / T);
}

ControlOutput controller_step(ControllerKind kind, double x, ControllerState state,
                              const Gains& g) {
    switch (kind) {
    case ControllerKind::implicit_stc:
        return implicit_stc_step(x, state, g);
    case ControllerKind::conditioned_stc:
        return conditioned_stc_step(x, state, g);
    case ControllerKind::brogliato:
        return brogliato_stc_step(x, state, g);
    case ControllerKind::explicit_euler:
        return explicit_euler_stc_step(x, state, g);
    case ControllerKind::fosm:
        if (!g.u_max())
            throw std::invalid_argument(
                "fosm controller: gains.u_max supplies the saturation level c");
        return {implicit_fosm_step(x, *g.u_max(), g.T()), state.v, std::nullopt};
    }
    throw std::logic_error("invalid ControllerKind");
}

}  // namespace istc
