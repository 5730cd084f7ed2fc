#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace istc::verify {

inline constexpr std::uint64_t kDefaultSeed = 1;

/// Outcome of one property suite. Every check inside a suite produces a
/// violation value that must stay <= 0; `worst` is the largest violation seen
/// and `detail` holds the first counterexample when the suite fails.
struct SuiteReport {
    std::string suite;
    std::uint64_t seed = kDefaultSeed;
    long trials = 0;
    long failures = 0;
    bool passed = false;
    double worst = 0.0;
    std::string detail;
};

/// Names accepted by run_suite, in canonical order.
const std::vector<std::string>& suite_names();

/// Runs the named suite. Throws std::invalid_argument for unknown names.
SuiteReport run_suite(std::string_view name, std::uint64_t seed = kDefaultSeed);

/// Closed-form resolvent against direct substitution into the generalized
/// equation, plus the dead-beat case split and its selection bounds.
SuiteReport check_resolvent(std::uint64_t seed, long trials = 100000);

/// Continuity of u(x) and v_next(x) across |x| = k2 T^2, and agreement of the
/// two branch formulas at the boundary.
SuiteReport check_branch_continuity(std::uint64_t seed, long trials = 10000);

/// Substitutes the conditioned-law output back into its generalized
/// equations (saturation equivalence).
SuiteReport check_saturation_equivalence(std::uint64_t seed, long trials = 100000);

/// Forward invariance of the dead-beat capture set and exact two-step
/// annihilation of the error state.
SuiteReport check_omega_invariance(std::uint64_t seed, long trials = 10000);

/// Forward invariance of Lyapunov sublevel sets, strict decrease outside the
/// origin, and midpoint convexity.
SuiteReport check_sublevel_invariance(std::uint64_t seed, long trials = 10000);

/// Persistence of the nested M1/M2/M3 sets on conditioned closed-loop runs
/// (one reference scenario plus randomized ones).
SuiteReport check_m_set_persistence(std::uint64_t seed, long scenarios = 100);

/// Worst-case disturbance construction reaches |x_{K+2}| >= L T^2 for
/// K = k_min..k_max against the proposed controller.
SuiteReport check_adversary_bound(std::uint64_t seed, int k_min = 2, int k_max = 20);

/// Coincidence of the implicit and explicit-Euler laws for k1 = 2 sqrt(k2)
/// outside the dead-beat region.
SuiteReport check_euler_coincidence(std::uint64_t seed, long trials = 10000);

}  // namespace istc::verify
