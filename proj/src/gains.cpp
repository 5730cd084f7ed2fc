#include "istc/gains.hpp"

#include <cmath>
#include <stdexcept>

namespace istc {

Gains::Gains(double k1, double k2, double T, std::optional<double> u_max)
    : k1_(k1), k2_(k2), T_(T), u_max_(u_max) {
    if (!std::isfinite(k1) || !(k1 > 0.0))
        throw std::invalid_argument("Gains: k1 must be finite and positive");
    if (!std::isfinite(k2) || !(k2 > 0.0))
        throw std::invalid_argument("Gains: k2 must be finite and positive");
    if (!std::isfinite(T) || !(T > 0.0))
        throw std::invalid_argument("Gains: T must be finite and positive");
    if (u_max_ && !(*u_max_ > 0.0))
        throw std::invalid_argument("Gains: u_max must be positive when present");
    lambda_ = k2_ - 0.25 * k1_ * k1_;
    deadbeat_threshold_ = k2_ * T_ * T_;
}

bool meets_unsaturated_conditions(const Gains& g, double L) {
    return g.k1() > std::sqrt(g.k2() + L) && g.k2() > L;
}

bool meets_saturated_conditions(const Gains& g, double L, double W) {
    if (!g.u_max())
        return false;
    const double U = *g.u_max();
    if (!(U > W + g.k2() * g.T()))
        return false;
    const double threshold =
        std::sqrt(2.0 * g.k2() * (U + W) / (U - W - g.k2() * g.T()));
    return g.k1() > threshold && g.k2() > L;
}

}  // namespace istc
