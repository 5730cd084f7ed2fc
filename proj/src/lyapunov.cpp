#include "istc/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace istc::analysis {

LyapunovParams::LyapunovParams(double alpha, double k1, double k2, double L)
    : alpha_(alpha), k1_(k1), k2_(k2), L_(L) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("LyapunovParams: alpha must lie in (0,1)");
    if (!(k1 > 0.0) || !(k2 > 0.0))
        throw std::invalid_argument("LyapunovParams: k1 and k2 must be positive");
    if (!(L >= 0.0))
        throw std::invalid_argument("LyapunovParams: L must be >= 0");
    strict_ = k1_ > std::sqrt(k2_ + L_) / alpha_ && k2_ > L_;
}

double lyapunov_value(double z, double q, const LyapunovParams& p) {
    if (!std::isfinite(z) || !std::isfinite(q))
        throw std::domain_error("lyapunov_value: non-finite input");
    const double ak1 = p.alpha() * p.k1();
    const double s = 3.0 * ak1 * ak1;
    if (z > 0.0 && q < ak1 * std::sqrt(z))
        return 2.0 * std::sqrt(q * q + s * z) - q;
    if (z < 0.0 && q > -ak1 * std::sqrt(-z))
        return 2.0 * std::sqrt(q * q - s * z) + q;
    return 3.0 * std::fabs(q);
}

SetVerdict sublevel_member(double z, double q, double c, const LyapunovParams& p) {
    if (!(c >= 0.0))
        throw std::invalid_argument("sublevel_member: level c must be >= 0");
    const double ak1 = p.alpha() * p.k1();
    const double r1 = std::fabs(12.0 * ak1 * ak1 * z - 2.0 * c * q) - (c * c - 3.0 * q * q);
    const double r2 = std::fabs(q) - c / 3.0;
    const double margin = std::max(r1, r2);
    return {margin <= 0.0, margin};
}

SetVerdict omega_member(double z, double q, double k2, double L, double T) {
    if (!(L >= 0.0) || !(T > 0.0))
        throw std::invalid_argument("omega_member: need L >= 0 and T > 0");
    if (!(k2 > L))
        throw std::invalid_argument("omega_member: requires k2 > L");
    const double bound = (k2 - L) * T * T;
    const double margin = std::max(std::fabs(z), std::fabs(z + T * q)) - bound;
    return {margin <= 0.0, margin};
}

MSetVerdict m_sets_member(double z, double v, double u_bar, const Gains& g,
                          double W, double delta_margin) {
    if (!g.u_max())
        throw std::invalid_argument("m_sets_member: gains.u_max required");
    if (!(W >= 0.0))
        throw std::invalid_argument("m_sets_member: W must be >= 0");
    if (!(delta_margin > 0.0))
        throw std::invalid_argument("m_sets_member: delta_margin must be positive");
    const double U = *g.u_max();
    if (!(U > W + g.k2() * g.T()))
        throw std::invalid_argument("m_sets_member: requires U > W + k2*T");
    const double head = U + W + delta_margin;
    const double z_bound = head * head / (g.k1() * g.k1());
    const bool m1 = std::fabs(v) <= U;
    const bool m2 = m1 && std::fabs(z) <= z_bound;
    const bool m3 = m2 && std::fabs(u_bar) <= U;
    const double threshold =
        std::sqrt(2.0 * g.k2() * head / (U - W - g.k2() * g.T()));
    return {m1, m2, m3, g.k1() > threshold, threshold};
}

double default_alpha(double k1, double k2, double L) {
    for (double alpha : {0.9, 0.95, 0.99}) {
        if (k1 > std::sqrt(k2 + L) / alpha)
            return alpha;
    }
    throw std::invalid_argument(
        "default_alpha: gains do not satisfy the strict Lyapunov condition "
        "for any alpha in {0.9, 0.95, 0.99}");
}

double default_delta_margin(const Gains& g, double W) {
    if (!g.u_max())
        throw std::invalid_argument("default_delta_margin: gains.u_max required");
    const double U = *g.u_max();
    return std::min(0.01 * U, (U - W - g.k2() * g.T()) / 10.0);
}

}  // namespace istc::analysis
