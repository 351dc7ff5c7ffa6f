#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwell1d/constants.hpp"
#include "qwell1d/pdm.hpp"
#include "qwell1d/structure.hpp"
#include "qwell1d/sweep.hpp"

// JSON run configuration.  One document drives one invocation; multi-curve
// figures put several runs in a "runs" array.  The schema is documented in
// the README; parsing is strict about required keys and value domains so a
// bad config fails before any solver starts.

namespace qwell1d::config {

using nlohmann::json;

enum class Mode { transmission, bound, validate };
enum class Engine { analytic, tmm, both };

inline std::string to_string(Mode m) {
    switch (m) {
        case Mode::transmission: return "transmission";
        case Mode::bound: return "bound";
        case Mode::validate: return "validate";
    }
    return {};
}

inline std::string to_string(Engine e) {
    switch (e) {
        case Engine::analytic: return "analytic";
        case Engine::tmm: return "tmm";
        case Engine::both: return "both";
    }
    return {};
}

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline double get_num(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError("config: missing or non-numeric field '" + key + "'");
    return j[key].get<double>();
}

inline int get_int(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ConfigError("config: missing or non-integer field '" + key + "'");
    return j[key].get<int>();
}

inline std::string get_str(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_string())
        throw ConfigError("config: missing or non-string field '" + key + "'");
    return j[key].get<std::string>();
}

}  // namespace detail

// ---------------------------------------------------------------- scattering

struct TransmissionRun {
    std::string label;
    std::string kind;  // single_barrier | sqw_db | dqwtb | layers
    double mass_ratio = 0.067;
    json params;  // kind-specific parameters, kept verbatim for round-tripping
    EnergyGrid grid;
    Engine engine = Engine::analytic;

    LayeredStructure structure() const {
        if (kind == "single_barrier")
            return make_single_barrier(detail::get_num(params, "v0"),
                                       detail::get_num(params, "a"), mass_ratio);
        if (kind == "sqw_db")
            return make_sqw_db(detail::get_num(params, "v_left"), detail::get_num(params, "a"),
                               detail::get_num(params, "well"),
                               detail::get_num(params, "v_right"),
                               detail::get_num(params, "b"), mass_ratio);
        if (kind == "dqwtb")
            return make_dqwtb(detail::get_num(params, "v1"), detail::get_num(params, "a"),
                              detail::get_num(params, "l1"), detail::get_num(params, "v2"),
                              detail::get_num(params, "b"), detail::get_num(params, "l2"),
                              mass_ratio);
        if (kind == "layers") {
            LayeredStructure s;
            s.lead_potential = params.value("lead_potential", 0.0);
            s.lead_mass_ratio = params.value("lead_mass_ratio", mass_ratio);
            if (!params.contains("layers") || !params["layers"].is_array())
                throw ConfigError("config: layers kind requires a 'layers' array");
            for (const auto& lj : params["layers"])
                s.layers.push_back({detail::get_num(lj, "width"), detail::get_num(lj, "height"),
                                    lj.value("mass_ratio", mass_ratio)});
            return s;
        }
        throw ConfigError("config: unknown transmission kind '" + kind + "'");
    }

    void validate() const {
        grid.validate();
        require(mass_ratio > 0.0, "config: mass_ratio must be > 0");
        if (kind == "layers" && engine != Engine::tmm)
            throw ConfigError("config: kind 'layers' supports only the tmm engine");
        structure().validate();
    }
};

// --------------------------------------------------------------- bound state

struct PotentialSpec {
    std::string kind;  // zero | dqwtb_centered | layers | supergaussian
    json params;
};

struct MassProfileSpec {
    std::string kind = "constant";  // constant | smooth_step | gaussian_bump | tabulated
    json params;

    bool is_constant() const { return kind == "constant"; }

    pdm::MassProfile profile(double default_m0) const {
        if (kind == "constant")
            return pdm::MassProfile::constant(params.value("m0", default_m0));
        if (kind == "smooth_step")
            return pdm::MassProfile::smooth_step(
                params.value("m0", default_m0), detail::get_num(params, "dm"),
                detail::get_num(params, "center"), detail::get_num(params, "width"));
        if (kind == "gaussian_bump")
            return pdm::MassProfile::gaussian_bump(
                params.value("m0", default_m0), detail::get_num(params, "dm"),
                detail::get_num(params, "center"), detail::get_num(params, "width"));
        if (kind == "tabulated") {
            if (!params.contains("values") || !params["values"].is_array())
                throw ConfigError("config: tabulated mass profile requires 'values'");
            return pdm::MassProfile::tabulated(detail::get_num(params, "x0"),
                                               detail::get_num(params, "dx"),
                                               params["values"].get<std::vector<double>>());
        }
        throw ConfigError("config: unknown mass profile kind '" + kind + "'");
    }
};

struct BoundRun {
    std::string label;
    double well_width = 21.0;
    double dx = 0.005;
    double mass_ratio = 0.067;
    PotentialSpec potential{"zero", json::object()};
    int n_modes = 10;
    std::vector<int> eigenfunction_modes;  // empty: all 1..n_modes
    MassProfileSpec mass_profile{"constant", json::object()};
    pdm::VonRoosParams von_roos{};

    // Structure view of the potential for region reporting; nullopt for
    // analytic potentials.
    std::optional<std::pair<LayeredStructure, double>> placed_structure() const {
        if (potential.kind == "dqwtb_centered") {
            const auto& p = potential.params;
            auto s = make_dqwtb(detail::get_num(p, "v1"), detail::get_num(p, "a"),
                                detail::get_num(p, "l1"), detail::get_num(p, "v2"),
                                detail::get_num(p, "b"), detail::get_num(p, "l2"), mass_ratio);
            return std::make_pair(s, 0.5 * (well_width - s.total_width()));
        }
        if (potential.kind == "layers") {
            const auto& p = potential.params;
            LayeredStructure s;
            s.lead_potential = 0.0;
            s.lead_mass_ratio = mass_ratio;
            for (const auto& lj : p["layers"])
                s.layers.push_back({detail::get_num(lj, "width"), detail::get_num(lj, "height"),
                                    lj.value("mass_ratio", mass_ratio)});
            return std::make_pair(s, detail::get_num(p, "offset"));
        }
        return std::nullopt;
    }

    ScalarField potential_field() const {
        if (potential.kind == "zero") return constant_field(0.0);
        if (potential.kind == "supergaussian") {
            const auto& p = potential.params;
            if (!p.contains("heights") || !p["heights"].is_array() || p["heights"].size() != 3)
                throw ConfigError("config: supergaussian requires 3 heights");
            std::array<double, 3> h{p["heights"][0].get<double>(), p["heights"][1].get<double>(),
                                    p["heights"][2].get<double>()};
            return numerov::supergaussian_sampler(h, detail::get_int(p, "alpha"));
        }
        if (auto ps = placed_structure())
            return placed_potential(ps->first, ps->second);
        throw ConfigError("config: unknown potential kind '" + potential.kind + "'");
    }

    void validate() const {
        require(well_width > 0.0, "config: well_width must be > 0");
        require(dx > 0.0, "config: dx must be > 0");
        require(n_modes >= 1, "config: n_modes must be >= 1");
        require(mass_ratio > 0.0, "config: mass_ratio must be > 0");
        von_roos.validate();
        potential_field();                       // parses/validates the spec
        mass_profile.profile(mass_ratio);        // likewise
        for (int m : eigenfunction_modes)
            require(m >= 1 && m <= n_modes, "config: eigenfunction mode out of range");
    }
};

struct RunConfig {
    Mode mode = Mode::validate;
    std::vector<TransmissionRun> transmission_runs;
    std::vector<BoundRun> bound_runs;

    void validate() const {
        if (mode == Mode::transmission) {
            require(!transmission_runs.empty(), "config: no transmission runs");
            for (const auto& r : transmission_runs) r.validate();
        } else if (mode == Mode::bound) {
            require(!bound_runs.empty(), "config: no bound runs");
            for (const auto& r : bound_runs) r.validate();
        }
    }
};

// ------------------------------------------------------------ (de)serializing

inline EnergyGrid grid_from_json(const json& j) {
    EnergyGrid g{detail::get_num(j, "min"), detail::get_num(j, "max"),
                 detail::get_int(j, "points")};
    g.validate();
    return g;
}

inline json grid_to_json(const EnergyGrid& g) {
    return {{"min", g.e_min}, {"max", g.e_max}, {"points", g.n_points}};
}

inline Engine engine_from_string(const std::string& s) {
    if (s == "analytic") return Engine::analytic;
    if (s == "tmm") return Engine::tmm;
    if (s == "both") return Engine::both;
    throw ConfigError("config: unknown engine '" + s + "'");
}

inline TransmissionRun transmission_run_from_json(const json& j) {
    TransmissionRun r;
    r.label = j.value("label", std::string{});
    r.kind = detail::get_str(j, "kind");
    r.mass_ratio = j.value("mass_ratio", 0.067);
    r.params = j.value("params", json::object());
    r.grid = grid_from_json(j.at("energy_grid"));
    r.engine = engine_from_string(j.value("engine", r.kind == "layers" ? "tmm" : "analytic"));
    return r;
}

inline json transmission_run_to_json(const TransmissionRun& r) {
    return {{"label", r.label},       {"kind", r.kind},
            {"mass_ratio", r.mass_ratio}, {"params", r.params},
            {"energy_grid", grid_to_json(r.grid)}, {"engine", to_string(r.engine)}};
}

inline BoundRun bound_run_from_json(const json& j) {
    BoundRun r;
    r.label = j.value("label", std::string{});
    r.well_width = detail::get_num(j, "well_width");
    r.dx = j.value("dx", 0.005);
    r.mass_ratio = j.value("mass_ratio", 0.067);
    if (j.contains("potential")) {
        r.potential.kind = detail::get_str(j["potential"], "kind");
        r.potential.params = j["potential"];
        r.potential.params.erase("kind");
    }
    r.n_modes = detail::get_int(j, "n_modes");
    if (j.contains("eigenfunction_modes"))
        r.eigenfunction_modes = j["eigenfunction_modes"].get<std::vector<int>>();
    if (j.contains("mass_profile")) {
        r.mass_profile.kind = detail::get_str(j["mass_profile"], "kind");
        r.mass_profile.params = j["mass_profile"];
        r.mass_profile.params.erase("kind");
    }
    if (j.contains("von_roos")) {
        const auto& v = j["von_roos"];
        r.von_roos.alpha = v.value("alpha", 0.0);
        r.von_roos.beta = v.value("beta", -1.0);
        r.von_roos.gamma = v.value("gamma", 0.0);
        if (v.contains("s_override") && !v["s_override"].is_null())
            r.von_roos.s_override = v["s_override"].get<double>();
    }
    return r;
}

inline json bound_run_to_json(const BoundRun& r) {
    json pot = r.potential.params;
    pot["kind"] = r.potential.kind;
    json mp = r.mass_profile.params;
    mp["kind"] = r.mass_profile.kind;
    json v{{"alpha", r.von_roos.alpha}, {"beta", r.von_roos.beta}, {"gamma", r.von_roos.gamma}};
    if (r.von_roos.s_override) v["s_override"] = *r.von_roos.s_override;
    json out{{"label", r.label},   {"well_width", r.well_width},
             {"dx", r.dx},         {"mass_ratio", r.mass_ratio},
             {"potential", pot},   {"n_modes", r.n_modes},
             {"mass_profile", mp}, {"von_roos", v}};
    if (!r.eigenfunction_modes.empty()) out["eigenfunction_modes"] = r.eigenfunction_modes;
    return out;
}

inline RunConfig parse(const json& j) {
    RunConfig cfg;
    const std::string mode = detail::get_str(j, "mode");
    if (mode == "transmission") cfg.mode = Mode::transmission;
    else if (mode == "bound") cfg.mode = Mode::bound;
    else if (mode == "validate") cfg.mode = Mode::validate;
    else throw ConfigError("config: unknown mode '" + mode + "'");

    const json runs = j.contains("runs") ? j["runs"] : json::array({j});
    if (!runs.is_array() || runs.empty())
        throw ConfigError("config: 'runs' must be a non-empty array");
    for (const auto& rj : runs) {
        if (cfg.mode == Mode::transmission)
            cfg.transmission_runs.push_back(transmission_run_from_json(rj));
        else if (cfg.mode == Mode::bound)
            cfg.bound_runs.push_back(bound_run_from_json(rj));
    }
    cfg.validate();
    return cfg;
}

inline json serialize(const RunConfig& cfg) {
    json j{{"mode", to_string(cfg.mode)}};
    json runs = json::array();
    for (const auto& r : cfg.transmission_runs) runs.push_back(transmission_run_to_json(r));
    for (const auto& r : cfg.bound_runs) runs.push_back(bound_run_to_json(r));
    if (cfg.mode != Mode::validate) j["runs"] = runs;
    return j;
}

}  // namespace qwell1d::config
