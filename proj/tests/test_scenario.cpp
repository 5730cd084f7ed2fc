#include "istc/scenario.hpp"

#include "istc/sweep.hpp"
#include "istc/trajectory_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <stdexcept>

using namespace istc;
using namespace istc::app;
using nlohmann::json;

namespace {

json fig3_json() {
    return json::parse(R"({
        "name": "fig3_unsaturated",
        "controller": "implicit_stc",
        "gains": {"k1": 27.0, "k2": 10.0, "T": 0.01},
        "disturbance": {"kind": "sawtooth", "L": 5.0, "W": 0.25},
        "x0": 1.0,
        "v0": 0.0,
        "horizon": 2000
    })");
}

}  // namespace

TEST_CASE("scenario parsing reads every field") {
    const ScenarioConfig cfg = scenario_from_json(fig3_json());
    CHECK(cfg.name == "fig3_unsaturated");
    CHECK(cfg.controller == ControllerKind::implicit_stc);
    CHECK(cfg.gains.k1() == 27.0);
    CHECK(cfg.gains.k2() == 10.0);
    CHECK(cfg.gains.T() == 0.01);
    CHECK(!cfg.gains.u_max());
    CHECK(cfg.disturbance.kind == DisturbanceSpec::Kind::sawtooth);
    CHECK(cfg.x0 == 1.0);
    CHECK(cfg.horizon == 2000);
}

TEST_CASE("scenario round-trips through JSON") {
    const ScenarioConfig cfg = scenario_from_json(fig3_json());
    CHECK(scenario_from_json(scenario_to_json(cfg)) == cfg);

    json saturated = fig3_json();
    saturated["controller"] = "conditioned_stc";
    saturated["gains"]["u_max"] = 1.5;
    saturated["seeds"] = {1, 2, 3};
    const ScenarioConfig sat = scenario_from_json(saturated);
    CHECK(scenario_from_json(scenario_to_json(sat)) == sat);

    json pw = fig3_json();
    pw["disturbance"] = {{"kind", "piecewise"},
                         {"breakpoints", json::array({json::array({0.0, 0.0}),
                                                      json::array({1.0, 5.0})})},
                         {"period", 2.0}};
    const ScenarioConfig pws = scenario_from_json(pw);
    CHECK(scenario_from_json(scenario_to_json(pws)) == pws);
}

TEST_CASE("scenario parsing reports field errors") {
    json bad = fig3_json();
    bad["controller"] = "unknown_law";
    CHECK_THROWS_AS(scenario_from_json(bad), std::invalid_argument);

    bad = fig3_json();
    bad.erase("gains");
    CHECK_THROWS_AS(scenario_from_json(bad), std::invalid_argument);

    bad = fig3_json();
    bad["gains"].erase("k1");
    CHECK_THROWS_AS(scenario_from_json(bad), std::invalid_argument);

    bad = fig3_json();
    bad["horizon"] = 0;
    CHECK_THROWS_AS(scenario_from_json(bad), std::invalid_argument);

    bad = fig3_json();
    bad["disturbance"] = {{"kind", "perlin"}};
    CHECK_THROWS_AS(scenario_from_json(bad), std::invalid_argument);

    // u_max on an unsaturated law is a configuration error
    bad = fig3_json();
    bad["gains"]["u_max"] = 1.0;
    CHECK_THROWS_AS(scenario_from_json(bad), std::invalid_argument);

    // conditioned law needs u_max
    bad = fig3_json();
    bad["controller"] = "conditioned_stc";
    CHECK_THROWS_AS(scenario_from_json(bad), std::invalid_argument);
}

TEST_CASE("fosm scenarios take the saturation level from gains.u_max") {
    json j = fig3_json();
    j["controller"] = "fosm";
    j["gains"] = {{"T", 0.01}, {"u_max", 1.0}};
    j["horizon"] = 1500;
    const ScenarioConfig cfg = scenario_from_json(j);
    const ScenarioResult result = run_scenario(cfg);
    double steady = 0.0;
    for (std::size_t k = 1000; k < result.trajectory.records.size(); ++k)
        steady = std::max(steady, std::fabs(result.trajectory.records[k].x));
    CHECK(steady <= 0.25 * 0.01 + 1e-9);

    j["gains"].erase("u_max");
    CHECK_THROWS_AS(scenario_from_json(j), std::invalid_argument);
}

TEST_CASE("gain-condition advisories fire only out of range") {
    CHECK(gain_condition_warnings(scenario_from_json(fig3_json())).empty());

    json weak = fig3_json();
    weak["gains"]["k1"] = 3.0;  // below sqrt(k2 + L)
    CHECK(!gain_condition_warnings(scenario_from_json(weak)).empty());

    json sat = fig3_json();
    sat["controller"] = "conditioned_stc";
    sat["gains"]["k1"] = 16.0;
    sat["gains"]["u_max"] = 1.5;
    CHECK(gain_condition_warnings(scenario_from_json(sat)).empty());
    sat["gains"]["u_max"] = 0.36;  // barely above W + k2 T, threshold explodes
    CHECK(!gain_condition_warnings(scenario_from_json(sat)).empty());
}

TEST_CASE("metrics JSON exposes exactly the documented keys") {
    const ScenarioConfig cfg = scenario_from_json(fig3_json());
    const ScenarioResult result = run_scenario(cfg);
    const json m = metrics_to_json(result.metrics);
    CHECK(m.size() == 6);
    for (const char* key : {"converged", "K_star", "max_abs_x_after", "max_x_sup_after",
                            "v_identity_residual", "lt2_bound"})
        CHECK(m.contains(key));
    CHECK(m["converged"].get<bool>());
    CHECK(m["K_star"].get<long>() >= 0);

    analysis::ConvergenceReport none;
    const json n = metrics_to_json(none);
    CHECK(n["K_star"].get<long>() == -1);
    CHECK(n["max_abs_x_after"].is_null());
}

TEST_CASE("scenario outputs are byte-identical across runs") {
    const ScenarioConfig cfg = scenario_from_json(fig3_json());
    const ScenarioResult a = run_scenario(cfg);
    const ScenarioResult b = run_scenario(cfg);
    CHECK(sim::trajectory_csv(a.trajectory) == sim::trajectory_csv(b.trajectory));
    CHECK(metrics_to_json(a.metrics).dump() == metrics_to_json(b.metrics).dump());
}

TEST_CASE("single-point sweep equals the plain scenario metrics") {
    json sweep_j;
    sweep_j["scenario"] = fig3_json();
    sweep_j["grid"] = json::array({{{"param", "gains.k1"}, {"values", {27.0}}}});
    const SweepConfig sweep_cfg = sweep_from_json(sweep_j);
    const auto rows = run_sweep(sweep_cfg, 1);
    REQUIRE(rows.size() == 1);
    const auto direct = run_scenario(scenario_from_json(fig3_json())).metrics;
    CHECK(rows[0].metrics.converged == direct.converged);
    CHECK(rows[0].metrics.k_star == direct.k_star);
    CHECK(rows[0].metrics.max_abs_x_after == direct.max_abs_x_after);
    CHECK(rows[0].metrics.v_identity_residual == direct.v_identity_residual);
}

TEST_CASE("sweep enumerates the grid in canonical order, independent of jobs") {
    json sweep_j;
    sweep_j["scenario"] = fig3_json();
    sweep_j["scenario"]["horizon"] = 300;
    sweep_j["grid"] = json::array({{{"param", "gains.k1"}, {"values", {10.0, 27.0}}},
                                   {{"param", "x0"}, {"values", {0.0, 1.0, 2.0}}}});
    const SweepConfig cfg = sweep_from_json(sweep_j);
    const auto serial = run_sweep(cfg, 1);
    const auto parallel = run_sweep(cfg, 4);
    REQUIRE(serial.size() == 6);
    REQUIRE(parallel.size() == 6);
    // row-major order: last axis fastest
    CHECK(serial[0].values[0].get<double>() == 10.0);
    CHECK(serial[0].values[1].get<double>() == 0.0);
    CHECK(serial[1].values[1].get<double>() == 1.0);
    CHECK(serial[3].values[0].get<double>() == 27.0);
    CHECK(sweep_csv(cfg, serial) == sweep_csv(cfg, parallel));
}

TEST_CASE("sweep validates its configuration") {
    json bad;
    bad["grid"] = json::array();
    CHECK_THROWS_AS(sweep_from_json(bad), std::invalid_argument);
    bad["scenario"] = fig3_json();
    CHECK_THROWS_AS(sweep_from_json(bad), std::invalid_argument);
}
