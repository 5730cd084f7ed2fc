#pragma once

#include "istc/controllers.hpp"
#include "istc/gains.hpp"
#include "istc/metrics.hpp"
#include "istc/piecewise_linear.hpp"
#include "istc/simulate.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace istc::app {

/// Disturbance description as it appears in scenario files.
struct DisturbanceSpec {
    enum class Kind { zero, constant, sawtooth, piecewise };

    Kind kind = Kind::zero;
    double value = 0.0;  // constant
    double L = 0.0;      // sawtooth slope bound
    double W = 0.0;      // sawtooth amplitude
    std::vector<sim::PiecewiseLinearSignal::Breakpoint> breakpoints;  // piecewise
    std::optional<double> period;                                     // piecewise

    friend bool operator==(const DisturbanceSpec&, const DisturbanceSpec&) = default;
};

struct ScenarioConfig {
    std::string name;
    ControllerKind controller = ControllerKind::implicit_stc;
    Gains gains{1.0, 1.0, 1.0};
    DisturbanceSpec disturbance;
    double x0 = 0.0;
    double v0 = 0.0;
    long horizon = 1;
    std::vector<std::uint64_t> seeds;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

ScenarioConfig scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);

/// Loads and validates a scenario file; the name defaults to the file stem.
ScenarioConfig load_scenario(const std::filesystem::path& file);

/// Materializes the disturbance signal. The sawtooth phase depends on the
/// sampling time.
sim::PiecewiseLinearSignal build_disturbance(const DisturbanceSpec& spec, double T);

/// Slope bound used for metrics and gain-condition checks: the declared L for
/// a sawtooth, the measured segment bound otherwise.
double disturbance_slope_bound(const DisturbanceSpec& spec,
                               const sim::PiecewiseLinearSignal& signal);

/// Advisories emitted when the configured gains miss the convergence
/// conditions for the configured disturbance class. Warnings, not errors.
std::vector<std::string> gain_condition_warnings(const ScenarioConfig& cfg);

struct ScenarioResult {
    sim::Trajectory trajectory;
    analysis::ConvergenceReport metrics;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// Flat metrics object with keys converged, K_star, max_abs_x_after,
/// max_x_sup_after, v_identity_residual, lt2_bound. Numeric fields are null
/// when the run did not converge.
nlohmann::json metrics_to_json(const analysis::ConvergenceReport& report);

}  // namespace istc::app
