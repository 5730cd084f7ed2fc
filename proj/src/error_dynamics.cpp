#include "istc/error_dynamics.hpp"

#include "istc/math_util.hpp"
#include "istc/resolvent.hpp"

#include <cmath>
#include <stdexcept>

namespace istc {

ErrorState error_dynamics_step(ErrorState e, double delta, const Gains& g) {
    if (g.saturated())
        throw std::invalid_argument("error_dynamics_step: unsaturated gains required");
    if (!std::isfinite(e.z) || !std::isfinite(e.q) || !std::isfinite(delta))
        throw std::domain_error("error_dynamics_step: non-finite input");
    const double T = g.T();
    const double z_next = resolvent(e.z + T * e.q + T * T * delta, g);
    const double q_next = (z_next - e.z + T * g.k1() * signed_sqrt(z_next)) / T;
    return {z_next, q_next};
}

}  // namespace istc
