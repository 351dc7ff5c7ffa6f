#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qwell1d/qwell1d.hpp"

// qwell1d <mode> --config <path> [--out <dir>] [--dx <nm>]
//         [--engine analytic|tmm|both] [--modes N] [--quiet]
// Modes: transmission, bound, validate, reproduce (reproduce loads a named
// preset config, e.g. `qwell1d reproduce fig6`).
// Exit codes: 0 success, 1 config error, 2 numerical failure,
//             3 validation-suite failure.

namespace {

using namespace qwell1d;

config::json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is.good())
        throw config::ConfigError("cannot open config file: " + path);
    config::json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        throw config::ConfigError("config parse error in " + path + ": " + e.what());
    }
    return j;
}

struct Options {
    std::string config_path;
    std::string preset;
    std::string presets_dir = "presets";
    std::string out_dir = ".";
    double dx = 0.0;            // 0: keep config value
    std::string engine;         // empty: keep config value
    int modes = 0;              // 0: keep config value
    bool quiet = false;
};

void apply_overrides(config::RunConfig& cfg, const Options& opt) {
    for (auto& r : cfg.bound_runs) {
        if (opt.dx > 0.0) r.dx = opt.dx;
        if (opt.modes > 0) {
            r.n_modes = opt.modes;
            r.eigenfunction_modes.clear();
        }
    }
    if (!opt.engine.empty())
        for (auto& r : cfg.transmission_runs)
            r.engine = config::engine_from_string(opt.engine);
}

int execute(config::RunConfig cfg, const Options& opt) {
    apply_overrides(cfg, opt);
    cfg.validate();

    if (cfg.mode == config::Mode::validate) {
        std::ostringstream report;
        const bool ok = run::run_validate(report);
        if (!opt.quiet || !ok) std::cout << report.str();
        return ok ? 0 : 3;
    }

    run::Report rep;
    if (cfg.mode == config::Mode::transmission)
        rep = run::run_transmission(cfg, opt.out_dir);
    else
        rep = run::run_bound(cfg, opt.out_dir);

    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
    if (!opt.quiet) {
        for (const auto& s : rep.summary) std::cout << s << '\n';
        for (const auto& f : rep.outputs) std::cout << "wrote " << f << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    // keep BLAS single-threaded: run-to-run determinism and no thread
    // oversubscription inside sweeps
    setenv("OPENBLAS_NUM_THREADS", "1", 0);
    setenv("OMP_NUM_THREADS", "1", 0);

    CLI::App app{"1D quantum heterostructure solver: scattering and bound states"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", opt.config_path, "JSON run configuration");
        if (needs_config) c->required();
        sub->add_option("--out", opt.out_dir, "output directory (default: .)");
        sub->add_option("--dx", opt.dx, "override mesh step in nm");
        sub->add_option("--engine", opt.engine, "analytic|tmm|both (transmission only)");
        sub->add_option("--modes", opt.modes, "override number of bound modes");
        sub->add_flag("--quiet", opt.quiet, "suppress the summary on stdout");
    };

    auto* t = app.add_subcommand("transmission", "scattering sweep -> CSV");
    add_common(t, true);
    auto* b = app.add_subcommand("bound", "bound states -> eigenvalue/eigenfunction CSVs");
    add_common(b, true);
    auto* v = app.add_subcommand("validate", "run the invariant suite");
    add_common(v, false);
    auto* rp = app.add_subcommand("reproduce", "run a named preset (fig4 .. fig18)");
    rp->add_option("preset", opt.preset, "preset name, e.g. fig6");
    rp->add_option("--presets", opt.presets_dir, "presets directory (default: presets)");
    add_common(rp, false);

    CLI11_PARSE(app, argc, argv);

    try {
        config::RunConfig cfg;
        if (app.got_subcommand(v)) {
            cfg.mode = config::Mode::validate;
            if (!opt.config_path.empty()) cfg = config::parse(load_json(opt.config_path));
        } else if (app.got_subcommand(rp)) {
            std::string path = opt.config_path;
            if (path.empty()) {
                if (opt.preset.empty())
                    throw config::ConfigError("reproduce: give a preset name or --config");
                path = opt.presets_dir + "/" + opt.preset + ".json";
            }
            cfg = config::parse(load_json(path));
        } else {
            cfg = config::parse(load_json(opt.config_path));
            const auto want = app.got_subcommand(t) ? config::Mode::transmission
                                                    : config::Mode::bound;
            if (cfg.mode != want)
                throw config::ConfigError("config mode '" + config::to_string(cfg.mode) +
                                          "' does not match the subcommand");
        }
        return execute(std::move(cfg), opt);
    } catch (const config::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
