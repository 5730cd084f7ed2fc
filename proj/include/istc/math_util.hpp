#pragma once

#include <algorithm>
#include <cmath>

namespace istc {

/// Scalar sign with sign(0) = 0.
inline double signum(double y) noexcept {
    return static_cast<double>(y > 0.0) - static_cast<double>(y < 0.0);
}

/// Signed square root |y|^{1/2} sign(y).
inline double signed_sqrt(double y) noexcept {
    return std::sqrt(std::fabs(y)) * signum(y);
}

/// Clamp to the symmetric interval [-bound, bound].
inline double saturate(double bound, double y) noexcept {
    return std::clamp(y, -bound, bound);
}

}  // namespace istc
