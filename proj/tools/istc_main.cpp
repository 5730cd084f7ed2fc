#include "istc/scenario.hpp"
#include "istc/sweep.hpp"
#include "istc/trajectory_io.hpp"
#include "istc/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << content;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
    const istc::app::ScenarioConfig cfg = istc::app::load_scenario(config_path);
    for (const std::string& warning : istc::app::gain_condition_warnings(cfg))
        std::cerr << "warning: " << cfg.name << ": " << warning << "\n";

    const istc::app::ScenarioResult result = istc::app::run_scenario(cfg);

    fs::create_directories(out_dir);
    const fs::path base = fs::path(out_dir) / cfg.name;
    write_file(base.string() + "_trajectory.csv",
               istc::sim::trajectory_csv(result.trajectory));
    const json metrics = istc::app::metrics_to_json(result.metrics);
    write_file(base.string() + "_metrics.json", metrics.dump(2) + "\n");

    std::cout << metrics.dump(2) << "\n";
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    const istc::verify::SuiteReport report = istc::verify::run_suite(suite, seed);
    json j;
    j["suite"] = report.suite;
    j["seed"] = report.seed;
    j["trials"] = report.trials;
    j["failures"] = report.failures;
    j["passed"] = report.passed;
    j["worst_margin"] = report.worst;
    if (!report.detail.empty())
        j["counterexample"] = report.detail;
    std::cout << j.dump(2) << "\n";
    return report.passed ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, int jobs, const std::string& out_dir) {
    const istc::app::SweepConfig cfg = istc::app::load_sweep(config_path);
    const std::vector<istc::app::SweepRow> rows = istc::app::run_sweep(cfg, jobs);
    fs::create_directories(out_dir);
    const fs::path out = fs::path(out_dir) / (cfg.name + "_sweep.csv");
    write_file(out, istc::app::sweep_csv(cfg, rows));
    std::cout << "wrote " << rows.size() << " rows to " << out.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"implicit super-twisting control: simulation, sweeps, and property suites"};
    app.require_subcommand(1);

    std::string sim_config;
    std::string sim_out = ".";
    CLI::App* sim = app.add_subcommand(
        "simulate", "run a scenario; writes <name>_trajectory.csv and <name>_metrics.json");
    sim->add_option("config", sim_config, "scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sim->add_option("--out", sim_out, "output directory (default: .)");

    std::string suite;
    std::uint64_t seed = istc::verify::kDefaultSeed;
    CLI::App* verify = app.add_subcommand("verify", "run a named property suite");
    std::string suite_help = "one of:";
    for (const auto& name : istc::verify::suite_names())
        suite_help += " " + name;
    verify->add_option("suite", suite, suite_help)->required();
    verify->add_option("--seed", seed, "RNG seed (default: 1)");

    std::string sweep_config;
    std::string sweep_out = ".";
    int jobs = 1;
    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter grid; writes <name>_sweep.csv");
    sweep->add_option("config", sweep_config, "sweep JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sweep->add_option("--jobs", jobs, "worker threads (default: 1)")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--out", sweep_out, "output directory (default: .)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed())
            return cmd_simulate(sim_config, sim_out);
        if (verify->parsed())
            return cmd_verify(suite, seed);
        if (sweep->parsed())
            return cmd_sweep(sweep_config, jobs, sweep_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
