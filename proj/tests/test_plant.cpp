#include "istc/simulate.hpp"

#include "istc/disturbances.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace istc;
using sim::PiecewiseLinearSignal;

TEST_CASE("integrate_interval handles constant input exactly") {
    const auto w = PiecewiseLinearSignal::constant(0.0);
    const auto r = sim::integrate_interval(0.0, 1.0, w, 0.0, 1.0);
    CHECK(r.x1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.x_sup == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(sim::integrate_interval(0.0, 1.0, w, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(sim::integrate_interval(0.0, 1.0, w, 2.0, 1.0), std::domain_error);
}

TEST_CASE("integrate_interval integrates a ramp disturbance exactly") {
    // w = 5t through the window of interest
    const auto w = PiecewiseLinearSignal::from_breakpoints({{0.0, 0.0}, {1.0, 5.0}});
    const auto r = sim::integrate_interval(0.0, 0.0, w, 0.0, 0.01);
    CHECK(r.x1 == doctest::Approx(2.5e-4).epsilon(1e-14));
}

TEST_CASE("integrate_interval finds interior extrema of the quadratic flow") {
    // u = 1, w = -2t: x(t) = t - t^2, vertex at t = 0.5 with x = 0.25
    const auto w = PiecewiseLinearSignal::from_breakpoints({{0.0, 0.0}, {2.0, -4.0}});
    const auto r = sim::integrate_interval(0.0, 1.0, w, 0.0, 1.0);
    CHECK(r.x1 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.x_sup == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("intersample supremum dominates dense sampling") {
    test::Rng rng(97);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<PiecewiseLinearSignal::Breakpoint> pts;
        double t = -0.5;
        for (int i = 0; i < 5; ++i) {
            pts.push_back({t, test::uniform(rng, -3.0, 3.0)});
            t += test::log_uniform(rng, 0.1, 1.0);
        }
        const auto w = PiecewiseLinearSignal::from_breakpoints(pts);
        const double x0 = test::uniform(rng, -2.0, 2.0);
        const double u = test::uniform(rng, -3.0, 3.0);
        const double t0 = test::uniform(rng, -0.5, 0.5);
        const double t1 = t0 + test::log_uniform(rng, 0.2, 2.0);
        const auto r = sim::integrate_interval(x0, u, w, t0, t1);

        double dense = 0.0;
        const int n = 4000;
        double x = x0;
        double prev = t0;
        dense = std::fabs(x0);
        for (int i = 1; i <= n; ++i) {
            const double ti = t0 + (t1 - t0) * i / n;
            x = sim::integrate_interval(x, u, w, prev, ti).x1;
            dense = std::max(dense, std::fabs(x));
            prev = ti;
        }
        CHECK(r.x_sup >= dense - 1e-12);
        CHECK(r.x_sup <= dense + 1e-4);  // grid resolution bound
        CHECK(r.x1 == doctest::Approx(x).epsilon(1e-12));
    }
}

TEST_CASE("composing subintervals matches one long interval") {
    const auto w = sim::sawtooth_disturbance(5.0, 0.25, 0.01);
    test::Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const double x0 = test::uniform(rng, -1.0, 1.0);
        const double u = test::uniform(rng, -2.0, 2.0);
        const double t0 = test::uniform(rng, 0.0, 1.0);
        const double t1 = t0 + test::log_uniform(rng, 0.05, 1.0);
        const auto whole = sim::integrate_interval(x0, u, w, t0, t1);
        double x = x0;
        const int n = 7;
        double prev = t0;
        for (int i = 1; i <= n; ++i) {
            const double ti = t0 + (t1 - t0) * i / n;
            x = sim::integrate_interval(x, u, w, prev, ti).x1;
            prev = ti;
        }
        CHECK(std::fabs(whole.x1 - x) <= 1e-13 * std::max(1.0, std::fabs(whole.x1)));
    }
}

TEST_CASE("closed loop stays at the origin without disturbance") {
    const Gains g(27.0, 10.0, 0.01);
    const auto w = PiecewiseLinearSignal::constant(0.0);
    const auto traj = sim::run_closed_loop(ControllerKind::implicit_stc, g, w, 0.0, 0.0, 50);
    for (const auto& r : traj.records) {
        CHECK(r.x == 0.0);
        CHECK(r.u == 0.0);
        CHECK(r.v == 0.0);
        CHECK(r.x_sup == 0.0);
    }
}

TEST_CASE("closed loop reproduces the discrete recursion") {
    const Gains g(27.0, 10.0, 0.01);
    const auto w = sim::sawtooth_disturbance(5.0, 0.25, 0.01);
    const auto traj = sim::run_closed_loop(ControllerKind::implicit_stc, g, w, 1.0, 0.0, 500);
    for (std::size_t k = 0; k + 1 < traj.records.size(); ++k) {
        const auto& a = traj.records[k];
        const auto& b = traj.records[k + 1];
        CHECK(std::fabs(b.x - a.x - g.T() * (a.u + a.w_avg)) <= 1e-12);
        CHECK(a.x_sup >= std::fabs(a.x));
        CHECK(a.x_sup >= std::fabs(b.x) - 1e-15);
    }
}

TEST_CASE("proposed law reaches the exact steady state on the reference scenario") {
    const Gains g(27.0, 10.0, 0.01);
    const auto w = sim::sawtooth_disturbance(5.0, 0.25, 0.01);
    const auto traj = sim::run_closed_loop(ControllerKind::implicit_stc, g, w, 1.0, 0.0, 2000);
    for (std::size_t k = 500; k < traj.records.size(); ++k) {
        const auto& r = traj.records[k];
        const double w1 = traj.records[k - 1].w_avg;
        const double w2 = traj.records[k - 2].w_avg;
        CHECK(std::fabs(r.x - g.T() * (w1 - w2)) <= 1e-12);
        CHECK(std::fabs(r.v + w2) <= 1e-12);
    }
}

TEST_CASE("baseline law settles on the coarser residual family") {
    const Gains g(27.0, 10.0, 0.01);
    const auto w = sim::sawtooth_disturbance(5.0, 0.25, 0.01);
    const auto traj = sim::run_closed_loop(ControllerKind::brogliato, g, w, 1.0, 0.0, 2000);
    double max_abs_x = 0.0;
    for (std::size_t k = 500; k < traj.records.size(); ++k) {
        const auto& r = traj.records[k];
        CHECK(std::fabs(r.x - g.T() * traj.records[k - 1].w_avg) <= 1e-6);
        max_abs_x = std::max(max_abs_x, std::fabs(r.x));
    }
    // residual tracks T w_{k-1}: a W*T-order band, not the L*T^2 band
    CHECK(max_abs_x > 4.0 * 5.0 * 0.01 * 0.01);
    CHECK(max_abs_x <= 0.25 * 0.01 + 1e-9);
}

TEST_CASE("closed-loop runs are bit-identical across repetitions") {
    const Gains g(16.0, 10.0, 0.01, 1.5);
    const auto w = sim::sawtooth_disturbance(5.0, 0.25, 0.01);
    const auto a = sim::run_closed_loop(ControllerKind::conditioned_stc, g, w, 1.0, 0.0, 300);
    const auto b = sim::run_closed_loop(ControllerKind::conditioned_stc, g, w, 1.0, 0.0, 300);
    CHECK(a == b);
}

TEST_CASE("closed loop rejects bad horizons and aborts on non-finite state") {
    const Gains g(27.0, 10.0, 0.01);
    const auto w = PiecewiseLinearSignal::constant(0.0);
    CHECK_THROWS_AS(sim::run_closed_loop(ControllerKind::implicit_stc, g, w, 0.0, 0.0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        sim::run_closed_loop(ControllerKind::implicit_stc, g, w, 0.0,
                             std::numeric_limits<double>::infinity(), 10),
        std::runtime_error);
}

TEST_CASE("average_disturbance validates T") {
    const auto w = PiecewiseLinearSignal::constant(1.0);
    CHECK_THROWS_AS(sim::average_disturbance(w, 0, 0.0), std::invalid_argument);
    CHECK(sim::average_disturbance(w, 3, 0.25) == doctest::Approx(1.0).epsilon(1e-15));
}
