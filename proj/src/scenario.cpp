#include "istc/scenario.hpp"

#include "istc/disturbances.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace istc::app {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& context, const std::string& what) {
    throw std::invalid_argument(context + ": " + what);
}

double require_number(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key))
        fail(ctx, "missing field '" + key + "'");
    if (!j.at(key).is_number())
        fail(ctx, "field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

double number_or(const json& j, const std::string& key, double fallback,
                 const std::string& ctx) {
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_number())
        fail(ctx, "field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

DisturbanceSpec disturbance_from_json(const json& j) {
    const std::string ctx = "disturbance";
    if (!j.is_object())
        fail(ctx, "must be an object");
    if (!j.contains("kind") || !j.at("kind").is_string())
        fail(ctx, "missing string field 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    DisturbanceSpec spec;
    if (kind == "zero") {
        spec.kind = DisturbanceSpec::Kind::zero;
    } else if (kind == "constant") {
        spec.kind = DisturbanceSpec::Kind::constant;
        spec.value = require_number(j, "value", ctx);
    } else if (kind == "sawtooth") {
        spec.kind = DisturbanceSpec::Kind::sawtooth;
        spec.L = require_number(j, "L", ctx);
        spec.W = require_number(j, "W", ctx);
        if (!(spec.L > 0.0) || !(spec.W > 0.0))
            fail(ctx, "sawtooth requires L > 0 and W > 0");
    } else if (kind == "piecewise") {
        spec.kind = DisturbanceSpec::Kind::piecewise;
        if (!j.contains("breakpoints") || !j.at("breakpoints").is_array())
            fail(ctx, "piecewise requires an array field 'breakpoints'");
        for (const auto& bp : j.at("breakpoints")) {
            if (!bp.is_array() || bp.size() != 2 || !bp[0].is_number() || !bp[1].is_number())
                fail(ctx, "each breakpoint must be a [t, value] pair of numbers");
            spec.breakpoints.push_back({bp[0].get<double>(), bp[1].get<double>()});
        }
        if (j.contains("period"))
            spec.period = require_number(j, "period", ctx);
    } else {
        fail(ctx, "unknown kind '" + kind + "'");
    }
    return spec;
}

json disturbance_to_json(const DisturbanceSpec& spec) {
    json j;
    switch (spec.kind) {
    case DisturbanceSpec::Kind::zero:
        j["kind"] = "zero";
        break;
    case DisturbanceSpec::Kind::constant:
        j["kind"] = "constant";
        j["value"] = spec.value;
        break;
    case DisturbanceSpec::Kind::sawtooth:
        j["kind"] = "sawtooth";
        j["L"] = spec.L;
        j["W"] = spec.W;
        break;
    case DisturbanceSpec::Kind::piecewise: {
        j["kind"] = "piecewise";
        json pts = json::array();
        for (const auto& bp : spec.breakpoints)
            pts.push_back(json::array({bp.t, bp.value}));
        j["breakpoints"] = std::move(pts);
        if (spec.period)
            j["period"] = *spec.period;
        break;
    }
    }
    return j;
}

}  // namespace

ScenarioConfig scenario_from_json(const json& j) {
    if (!j.is_object())
        throw std::invalid_argument("scenario: top level must be an object");
    ScenarioConfig cfg;
    if (j.contains("name")) {
        if (!j.at("name").is_string())
            throw std::invalid_argument("scenario: field 'name' must be a string");
        cfg.name = j.at("name").get<std::string>();
    }
    if (!j.contains("controller") || !j.at("controller").is_string())
        throw std::invalid_argument("scenario: missing string field 'controller'");
    cfg.controller = controller_kind_from_string(j.at("controller").get<std::string>());

    if (!j.contains("gains") || !j.at("gains").is_object())
        throw std::invalid_argument("scenario: missing object field 'gains'");
    const json& gj = j.at("gains");
    const std::string gctx = "gains";
    const bool is_fosm = cfg.controller == ControllerKind::fosm;
    // The first-order law has no k1/k2; placeholders keep Gains valid.
    const double k1 = is_fosm ? number_or(gj, "k1", 1.0, gctx) : require_number(gj, "k1", gctx);
    const double k2 = is_fosm ? number_or(gj, "k2", 1.0, gctx) : require_number(gj, "k2", gctx);
    const double T = require_number(gj, "T", gctx);
    std::optional<double> u_max;
    if (gj.contains("u_max"))
        u_max = require_number(gj, "u_max", gctx);
    cfg.gains = Gains(k1, k2, T, u_max);

    switch (cfg.controller) {
    case ControllerKind::implicit_stc:
    case ControllerKind::brogliato:
    case ControllerKind::explicit_euler:
        if (u_max)
            throw std::invalid_argument(
                "scenario: controller '" + std::string(to_string(cfg.controller)) +
                "' is an unsaturated law; remove gains.u_max");
        break;
    case ControllerKind::conditioned_stc:
        if (!u_max)
            throw std::invalid_argument("scenario: conditioned_stc requires gains.u_max");
        break;
    case ControllerKind::fosm:
        if (!u_max)
            throw std::invalid_argument(
                "scenario: fosm requires gains.u_max (the saturation level c)");
        break;
    }

    if (!j.contains("disturbance"))
        throw std::invalid_argument("scenario: missing field 'disturbance'");
    cfg.disturbance = disturbance_from_json(j.at("disturbance"));

    cfg.x0 = number_or(j, "x0", 0.0, "scenario");
    cfg.v0 = number_or(j, "v0", 0.0, "scenario");
    if (!j.contains("horizon") || !j.at("horizon").is_number_integer())
        throw std::invalid_argument("scenario: missing integer field 'horizon'");
    cfg.horizon = j.at("horizon").get<long>();
    if (cfg.horizon < 1)
        throw std::invalid_argument("scenario: horizon must be >= 1");
    if (j.contains("seeds")) {
        if (!j.at("seeds").is_array())
            throw std::invalid_argument("scenario: field 'seeds' must be an array");
        for (const auto& s : j.at("seeds")) {
            if (!s.is_number_unsigned() && !s.is_number_integer())
                throw std::invalid_argument("scenario: seeds must be integers");
            cfg.seeds.push_back(s.get<std::uint64_t>());
        }
    }
    return cfg;
}

nlohmann::json scenario_to_json(const ScenarioConfig& cfg) {
    json j;
    if (!cfg.name.empty())
        j["name"] = cfg.name;
    j["controller"] = std::string(to_string(cfg.controller));
    json gj;
    gj["k1"] = cfg.gains.k1();
    gj["k2"] = cfg.gains.k2();
    gj["T"] = cfg.gains.T();
    if (cfg.gains.u_max())
        gj["u_max"] = *cfg.gains.u_max();
    j["gains"] = std::move(gj);
    j["disturbance"] = disturbance_to_json(cfg.disturbance);
    j["x0"] = cfg.x0;
    j["v0"] = cfg.v0;
    j["horizon"] = cfg.horizon;
    if (!cfg.seeds.empty())
        j["seeds"] = cfg.seeds;
    return j;
}

ScenarioConfig load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("cannot open scenario file: " + file.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(file.string() + ": " + e.what());
    }
    try {
        ScenarioConfig cfg = scenario_from_json(j);
        if (cfg.name.empty())
            cfg.name = file.stem().string();
        return cfg;
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(file.string() + ": " + e.what());
    }
}

sim::PiecewiseLinearSignal build_disturbance(const DisturbanceSpec& spec, double T) {
    switch (spec.kind) {
    case DisturbanceSpec::Kind::zero:
        return sim::PiecewiseLinearSignal::constant(0.0);
    case DisturbanceSpec::Kind::constant:
        return sim::PiecewiseLinearSignal::constant(spec.value);
    case DisturbanceSpec::Kind::sawtooth:
        return sim::sawtooth_disturbance(spec.L, spec.W, T);
    case DisturbanceSpec::Kind::piecewise:
        if (spec.period)
            return sim::PiecewiseLinearSignal::periodic(spec.breakpoints, *spec.period);
        return sim::PiecewiseLinearSignal::from_breakpoints(spec.breakpoints);
    }
    throw std::logic_error("invalid DisturbanceSpec");
}

double disturbance_slope_bound(const DisturbanceSpec& spec,
                               const sim::PiecewiseLinearSignal& signal) {
    if (spec.kind == DisturbanceSpec::Kind::sawtooth)
        return spec.L;
    return signal.slope_bound();
}

std::vector<std::string> gain_condition_warnings(const ScenarioConfig& cfg) {
    std::vector<std::string> out;
    const sim::PiecewiseLinearSignal signal = build_disturbance(cfg.disturbance, cfg.gains.T());
    const double L = disturbance_slope_bound(cfg.disturbance, signal);
    const double W = cfg.disturbance.kind == DisturbanceSpec::Kind::sawtooth
                         ? cfg.disturbance.W
                         : signal.amplitude_bound();
    std::ostringstream msg;
    switch (cfg.controller) {
    case ControllerKind::implicit_stc:
    case ControllerKind::brogliato:
    case ControllerKind::explicit_euler:
        if (!meets_unsaturated_conditions(cfg.gains, L)) {
            msg << "gain conditions for guaranteed convergence are not met: need "
                   "k1 > sqrt(k2 + L) and k2 > L with L = "
                << L;
            out.push_back(msg.str());
        }
        break;
    case ControllerKind::conditioned_stc:
        if (!meets_saturated_conditions(cfg.gains, L, W)) {
            msg << "saturated-law gain conditions are not met: need U > W + k2*T, "
                   "k1 > sqrt(2 k2 (U+W)/(U-W-k2*T)) and k2 > L with L = "
                << L << ", W = " << W;
            out.push_back(msg.str());
        }
        break;
    case ControllerKind::fosm:
        if (!(*cfg.gains.u_max() > W)) {
            msg << "fosm saturation level c = " << *cfg.gains.u_max()
                << " does not exceed the disturbance amplitude W = " << W
                << "; the steady accuracy band W*T is not guaranteed";
            out.push_back(msg.str());
        }
        break;
    }
    return out;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    const sim::PiecewiseLinearSignal signal = build_disturbance(cfg.disturbance, cfg.gains.T());
    ScenarioResult result{
        sim::run_closed_loop(cfg.controller, cfg.gains, signal, cfg.x0, cfg.v0, cfg.horizon),
        {}};
    result.metrics = analysis::convergence_metrics(
        result.trajectory, signal, disturbance_slope_bound(cfg.disturbance, signal),
        cfg.gains.T());
    return result;
}

nlohmann::json metrics_to_json(const analysis::ConvergenceReport& r) {
    json j;
    j["converged"] = r.converged;
    j["K_star"] = r.k_star;
    if (r.converged) {
        j["max_abs_x_after"] = r.max_abs_x_after;
        j["max_x_sup_after"] = r.max_x_sup_after;
        j["v_identity_residual"] = r.v_identity_residual;
    } else {
        j["max_abs_x_after"] = nullptr;
        j["max_x_sup_after"] = nullptr;
        j["v_identity_residual"] = nullptr;
    }
    j["lt2_bound"] = r.lt2_bound;
    return j;
}

}  // namespace istc::app
