#include "istc/resolvent.hpp"

#include "istc/math_util.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace istc {

double resolvent(double offset, const Gains& g) {
    if (!std::isfinite(offset))
        throw std::domain_error("resolvent: offset must be finite");
    if (std::fabs(offset) <= g.deadbeat_threshold())
        return 0.0;
    // In this branch the radicand is at least (k1 T / 2)^2 > 0; a negative
    // value can only be a rounding residue.
    double radicand = std::fabs(offset) - g.lambda() * g.T() * g.T();
    if (radicand < 0.0) {
#ifndef NDEBUG
        std::fprintf(stderr, "resolvent: clamped negative radicand %.17g\n",
                     radicand);
#endif
        radicand = 0.0;
    }
    const double root = std::sqrt(radicand) - 0.5 * g.T() * g.k1();
    return root * root * signum(offset);
}

}  // namespace istc
