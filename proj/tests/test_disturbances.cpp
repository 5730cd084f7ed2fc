#include "istc/disturbances.hpp"

#include "istc/simulate.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace istc;
using sim::PiecewiseLinearSignal;

TEST_CASE("sawtooth has the declared period, amplitude, and slope") {
    const double L = 5.0, W = 0.25, T = 0.01;
    const auto w = sim::sawtooth_disturbance(L, W, T);
    CHECK(w.is_periodic());
    CHECK(w.period() == doctest::Approx(4.0 * W / L).epsilon(1e-15));
    CHECK(w.amplitude_bound() == W);
    CHECK(w.slope_bound() == doctest::Approx(L).epsilon(1e-12));
    for (const auto& bp : w.breakpoints())
        CHECK(std::fabs(bp.value) == W);
    // zero crossing at t = T, rising
    CHECK(std::fabs(w.value(T)) <= 1e-12);
    CHECK(w.value(T + 0.001) > 0.0);
    // periodicity
    CHECK(w.value(0.123) == doctest::Approx(w.value(0.123 + w.period())).epsilon(1e-12));
    CHECK_THROWS_AS(sim::sawtooth_disturbance(0.0, W, T), std::invalid_argument);
}

TEST_CASE("sawtooth sample averages match the closed-form sequence") {
    const double L = 5.0, W = 0.25, T = 0.01;
    const auto w = sim::sawtooth_disturbance(L, W, T);
    // w_k = 0.05 k - 0.025 on the rising edge, mirrored on the falling edge,
    // and sign-flipped every ten samples
    const auto expected = [](long k) {
        const long m = k % 20;
        const long r = m % 10;
        double val;
        if (r <= 5)
            val = 0.05 * static_cast<double>(r) - 0.025;
        else
            val = 0.525 - 0.05 * static_cast<double>(r);
        return m < 10 ? val : -val;
    };
    CHECK(sim::average_disturbance(w, 0, T) == doctest::Approx(-0.025).epsilon(1e-12));
    CHECK(sim::average_disturbance(w, 1, T) == doctest::Approx(0.025).epsilon(1e-12));
    CHECK(sim::average_disturbance(w, 5, T) == doctest::Approx(0.225).epsilon(1e-12));
    CHECK(sim::average_disturbance(w, 6, T) == doctest::Approx(0.225).epsilon(1e-12));
    CHECK(sim::average_disturbance(w, 9, T) == doctest::Approx(0.075).epsilon(1e-12));
    CHECK(sim::average_disturbance(w, 10, T) ==
          doctest::Approx(0.025).epsilon(1e-12));  // -w_0
    for (long k = 0; k < 200; ++k)
        CHECK(sim::average_disturbance(w, k, T) ==
              doctest::Approx(expected(k)).epsilon(1e-11));
}

TEST_CASE("sample averages respect the discrete disturbance bounds") {
    const double L = 5.0, W = 0.25, T = 0.01;
    const auto w = sim::sawtooth_disturbance(L, W, T);
    double prev = sim::average_disturbance(w, 0, T);
    for (long k = 1; k < 500; ++k) {
        const double cur = sim::average_disturbance(w, k, T);
        // the sampling grid fl(k*T) carries ulp-level window jitter, which
        // scales the averages by 1 +- ulp(t)/T
        CHECK(std::fabs(cur) <= W + 1e-12);
        CHECK(std::fabs(cur - prev) <= L * T + 1e-12);
        prev = cur;
    }
}

TEST_CASE("adversary signal zeroes the averages up to K") {
    const double L = 5.0, T = 0.01;
    for (int K : {1, 2, 5, 12}) {
        for (int q : {-1, +1}) {
            const auto w = sim::adversary_signal(K, L, T, q);
            for (int k = 0; k <= K; ++k)
                CHECK(sim::average_disturbance(w, k, T) == 0.0);
            const double expect = (K % 2 == 0 ? 1.0 : -1.0) * q * L * T;
            CHECK(sim::average_disturbance(w, K + 1, T) ==
                  doctest::Approx(expect).epsilon(1e-14));
            CHECK(w.amplitude_bound() <= 1.5 * L * T * (1.0 + 1e-15));
            CHECK(w.slope_bound() <= L * (1.0 + 1e-12));
        }
    }
    CHECK_THROWS_AS(sim::adversary_signal(0, L, T, 1), std::domain_error);
    CHECK_THROWS_AS(sim::adversary_signal(2, L, T, 3), std::invalid_argument);
}

TEST_CASE("adversary construction defeats the controller's accuracy floor") {
    const Gains g(27.0, 10.0, 0.01);
    const double L = 5.0, W = 0.25, T = 0.01;
    for (int K : {3, 7}) {
        const auto probe_signal = sim::adversary_signal(K, L, T, +1);
        const auto probe = sim::run_closed_loop(ControllerKind::implicit_stc, g,
                                                probe_signal, 1.0, 0.0, K + 2);
        const auto [signal, q] = sim::adversary_disturbance(K, L, T, probe, W);
        CHECK((q == 1 || q == -1));
        const auto replay = sim::run_closed_loop(ControllerKind::implicit_stc, g,
                                                 signal, 1.0, 0.0, K + 3);
        CHECK(std::fabs(replay.records[static_cast<std::size_t>(K) + 2].x) >=
              L * T * T - 1e-12);
    }
}

TEST_CASE("adversary rejects undersized budgets and short transcripts") {
    const Gains g(27.0, 10.0, 0.01);
    const double L = 5.0, T = 0.01;
    const auto probe_signal = sim::adversary_signal(4, L, T, +1);
    const auto probe = sim::run_closed_loop(ControllerKind::implicit_stc, g,
                                            probe_signal, 1.0, 0.0, 6);
    CHECK_THROWS_AS(sim::adversary_disturbance(4, L, T, probe, 0.07), std::domain_error);
    const auto short_probe = sim::run_closed_loop(ControllerKind::implicit_stc, g,
                                                  probe_signal, 1.0, 0.0, 5);
    CHECK_THROWS_AS(sim::adversary_disturbance(4, L, T, short_probe), std::domain_error);
    CHECK_THROWS_AS(sim::adversary_disturbance(0, L, T, probe), std::domain_error);
}
