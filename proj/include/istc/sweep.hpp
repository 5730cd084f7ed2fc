#pragma once

#include "istc/metrics.hpp"
#include "istc/scenario.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace istc::app {

/// One grid axis: a dotted parameter path into the scenario object (for
/// example "gains.k1") and the values it takes.
struct SweepAxis {
    std::string param;
    std::vector<nlohmann::json> values;
};

struct SweepConfig {
    std::string name;
    nlohmann::json base;  ///< scenario object the grid patches
    std::vector<SweepAxis> axes;
};

SweepConfig sweep_from_json(const nlohmann::json& j);
SweepConfig load_sweep(const std::filesystem::path& file);

struct SweepRow {
    std::vector<nlohmann::json> values;  ///< grid point, axis order
    analysis::ConvergenceReport metrics;
};

/// Runs every grid point (row-major, last axis fastest). Points may execute
/// concurrently; the returned rows are always in grid order.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg, int jobs = 1);

/// Aggregated CSV: index, one column per axis, then the metric columns.
std::string sweep_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows);

}  // namespace istc::app
