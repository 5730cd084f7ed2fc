#include "istc/sweep.hpp"

#include "istc/trajectory_io.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace istc::app {

namespace {

using nlohmann::json;

json::json_pointer pointer_from_dotted(const std::string& dotted) {
    std::string ptr;
    ptr.reserve(dotted.size() + 4);
    ptr.push_back('/');
    for (char c : dotted)
        ptr.push_back(c == '.' ? '/' : c);
    return json::json_pointer(ptr);
}

std::string csv_cell(const json& v) {
    if (v.is_boolean())
        return v.get<bool>() ? "1" : "0";
    if (v.is_number())
        return sim::format_double(v.get<double>());
    return v.dump();
}

}  // namespace

SweepConfig sweep_from_json(const json& j) {
    if (!j.is_object() || !j.contains("scenario") || !j.at("scenario").is_object())
        throw std::invalid_argument("sweep: missing object field 'scenario'");
    if (!j.contains("grid") || !j.at("grid").is_array() || j.at("grid").empty())
        throw std::invalid_argument("sweep: missing non-empty array field 'grid'");
    SweepConfig cfg;
    if (j.contains("name"))
        cfg.name = j.at("name").get<std::string>();
    cfg.base = j.at("scenario");
    for (const auto& axis : j.at("grid")) {
        if (!axis.is_object() || !axis.contains("param") || !axis.contains("values") ||
            !axis.at("param").is_string() || !axis.at("values").is_array() ||
            axis.at("values").empty())
            throw std::invalid_argument(
                "sweep: each grid entry needs a string 'param' and a non-empty 'values' array");
        SweepAxis a;
        a.param = axis.at("param").get<std::string>();
        for (const auto& v : axis.at("values"))
            a.values.push_back(v);
        cfg.axes.push_back(std::move(a));
    }
    return cfg;
}

SweepConfig load_sweep(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("cannot open sweep file: " + file.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(file.string() + ": " + e.what());
    }
    SweepConfig cfg = sweep_from_json(j);
    if (cfg.name.empty())
        cfg.name = file.stem().string();
    return cfg;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg, int jobs) {
    if (jobs < 1)
        throw std::invalid_argument("run_sweep: jobs must be >= 1");
    std::size_t total = 1;
    for (const auto& axis : cfg.axes)
        total *= axis.values.size();

    std::vector<SweepRow> rows(total);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    const auto worker = [&]() {
        for (;;) {
            const std::size_t index = next.fetch_add(1);
            if (index >= total)
                return;
            try {
                // decode grid coordinates, last axis fastest
                std::size_t rest = index;
                std::vector<std::size_t> coord(cfg.axes.size());
                for (std::size_t a = cfg.axes.size(); a-- > 0;) {
                    coord[a] = rest % cfg.axes[a].values.size();
                    rest /= cfg.axes[a].values.size();
                }
                json point = cfg.base;
                SweepRow row;
                for (std::size_t a = 0; a < cfg.axes.size(); ++a) {
                    const json& v = cfg.axes[a].values[coord[a]];
                    point[pointer_from_dotted(cfg.axes[a].param)] = v;
                    row.values.push_back(v);
                }
                const ScenarioConfig scenario = scenario_from_json(point);
                row.metrics = run_scenario(scenario).metrics;
                rows[index] = std::move(row);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                next.store(total);
                return;
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int i = 0; i < jobs; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    if (first_error)
        std::rethrow_exception(first_error);
    return rows;
}

std::string sweep_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
    std::string out = "index";
    for (const auto& axis : cfg.axes) {
        out += ',';
        out += axis.param;
    }
    out += ",converged,K_star,max_abs_x_after,max_x_sup_after,v_identity_residual,lt2_bound\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out += std::to_string(i);
        for (const auto& v : rows[i].values) {
            out += ',';
            out += csv_cell(v);
        }
        const auto& m = rows[i].metrics;
        out += ',';
        out += m.converged ? "1" : "0";
        out += ',';
        out += std::to_string(m.k_star);
        out += ',';
        out += sim::format_double(m.max_abs_x_after);
        out += ',';
        out += sim::format_double(m.max_x_sup_after);
        out += ',';
        out += sim::format_double(m.v_identity_residual);
        out += ',';
        out += m.lt2_bound ? "1" : "0";
        out += '\n';
    }
    return out;
}

}  // namespace istc::app
