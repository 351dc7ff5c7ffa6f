#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qwell1d/analytic.hpp"
#include "qwell1d/config.hpp"
#include "qwell1d/csv.hpp"
#include "qwell1d/numerov.hpp"
#include "qwell1d/pdm.hpp"
#include "qwell1d/sweep.hpp"
#include "qwell1d/tmm.hpp"
#include "qwell1d/validate.hpp"

// Execution of parsed run configurations: sweeps and eigensolves in, CSV
// files out.  Everything here is deterministic for a fixed config (fixed
// formatting, fixed row order), which the acceptance suite checks
// byte-for-byte.

namespace qwell1d::run {

namespace fs = std::filesystem;

struct Report {
    std::vector<std::string> outputs;   // files written
    std::vector<std::string> warnings;  // per-row failures etc.
    std::vector<std::string> summary;   // human-readable result lines
};

namespace detail {

inline std::function<ScatteringResult(double)> closed_form_engine(
    const config::TransmissionRun& r) {
    using config::detail::get_num;
    const double m = r.mass_ratio;
    if (r.kind == "single_barrier") {
        const double v0 = get_num(r.params, "v0"), a = get_num(r.params, "a");
        return [=](double E) { return analytic::single_barrier(E, v0, a, m); };
    }
    if (r.kind == "sqw_db") {
        const double vl = get_num(r.params, "v_left"), a = get_num(r.params, "a");
        const double L = get_num(r.params, "well");
        const double vr = get_num(r.params, "v_right"), b = get_num(r.params, "b");
        return [=](double E) { return analytic::sqw_db(E, vl, a, L, vr, b, m); };
    }
    if (r.kind == "dqwtb") {
        const double v1 = get_num(r.params, "v1"), a = get_num(r.params, "a");
        const double l1 = get_num(r.params, "l1"), v2 = get_num(r.params, "v2");
        const double b = get_num(r.params, "b"), l2 = get_num(r.params, "l2");
        return [=](double E) { return analytic::dqwtb(E, v1, a, l1, v2, b, l2, m); };
    }
    throw config::ConfigError("no closed form for kind '" + r.kind + "'");
}

inline std::function<ScatteringResult(double)> tmm_engine(const config::TransmissionRun& r) {
    const auto s = r.structure();
    return [s](double E) { return tmm::scatter(s, E); };
}

inline std::string stem(const std::string& label, const std::string& fallback) {
    return label.empty() ? fallback : label;
}

inline void collect_row_warnings(const SweepTable& t, Report& rep) {
    for (const auto& row : t.rows)
        if (!row.ok)
            rep.warnings.push_back("row E = " + csv::format_value(row.res.E) +
                                   " failed: " + row.error);
}

}  // namespace detail

// One CSV per run: E_eV, T, R, theta_T_rad, theta_R_rad, re_t, im_t, re_r,
// im_r; the `both` engine appends T_tmm and abs_dT columns and reports the
// maximum |dT| in the summary.
inline Report run_transmission(const config::RunConfig& cfg, const fs::path& out_dir) {
    Report rep;
    fs::create_directories(out_dir);
    for (const auto& r : cfg.transmission_runs) {
        r.validate();
        const bool both = r.engine == config::Engine::both;
        const bool analytic_primary = r.engine != config::Engine::tmm;
        auto primary = analytic_primary ? detail::closed_form_engine(r) : detail::tmm_engine(r);
        const auto table = sweep(primary, r.grid);
        detail::collect_row_warnings(table, rep);

        SweepTable table_tmm;
        double max_dT = 0.0;
        if (both) {
            table_tmm = sweep(detail::tmm_engine(r), r.grid);
            for (int i = 0; i < r.grid.n_points; ++i)
                if (table.rows[i].ok && table_tmm.rows[i].ok)
                    max_dT = std::max(max_dT, std::abs(table.rows[i].res.T -
                                                       table_tmm.rows[i].res.T));
        }

        const fs::path file = out_dir / (detail::stem(r.label, "transmission") + ".csv");
        std::ofstream os(file, std::ios::binary);
        require(os.good(), "run_transmission: cannot open " + file.string());
        std::vector<std::string> cols{"E_eV", "T",    "R",    "theta_T_rad", "theta_R_rad",
                                      "re_t", "im_t", "re_r", "im_r"};
        if (both) {
            cols.push_back("T_tmm");
            cols.push_back("abs_dT");
        }
        csv::write_header(os, cols);
        for (int i = 0; i < r.grid.n_points; ++i) {
            const auto& res = table.rows[i].res;
            std::vector<double> row{res.E,          res.T,          res.R,
                                    res.theta_T,    res.theta_R,    res.t.real(),
                                    res.t.imag(),   res.r.real(),   res.r.imag()};
            if (both) {
                const auto& rt = table_tmm.rows[i].res;
                row.push_back(rt.T);
                row.push_back(std::abs(res.T - rt.T));
            }
            csv::write_row(os, row);
        }
        rep.outputs.push_back(file.string());
        std::ostringstream line;
        line << detail::stem(r.label, "transmission") << ": " << r.grid.n_points
             << " energies";
        if (both) line << ", max |dT| = " << csv::format_value(max_dT);
        const auto peaks = find_peaks(table, 0.5);
        if (!peaks.empty()) {
            const auto top = *std::max_element(
                peaks.begin(), peaks.end(),
                [](const Peak& x, const Peak& y) { return x.T < y.T; });
            line << ", top peak T = " << csv::format_value(top.T) << " at E = "
                 << csv::format_value(top.E);
        }
        rep.summary.push_back(line.str());
    }
    return rep;
}

// Two CSVs per run: <stem>_eigenvalues.csv (n, E_eV, one probability column
// per region when the potential has layer interfaces) and
// <stem>_eigenfunctions.csv (x_nm plus |psi_n|^2 columns, probability
// normalized).
inline Report run_bound(const config::RunConfig& cfg, const fs::path& out_dir) {
    Report rep;
    fs::create_directories(out_dir);
    for (const auto& r : cfg.bound_runs) {
        r.validate();
        const auto mass_prof = r.mass_profile.profile(r.mass_ratio);
        const auto g = build_grid(r.well_width, r.dx, r.potential_field(),
                                  [&](double x) { return mass_prof.m(x); });

        std::vector<numerov::EigenPair> pairs;
        if (r.mass_profile.is_constant())
            pairs = numerov::solve(numerov::assemble(g), r.n_modes);
        else
            pairs = pdm::solve_pdm(g, mass_prof, r.von_roos, r.n_modes);

        std::vector<double> edges;
        if (auto ps = r.placed_structure())
            edges = region_edges(ps->first, ps->second, r.well_width);

        const std::string stem = detail::stem(r.label, "bound");
        const fs::path efile = out_dir / (stem + "_eigenvalues.csv");
        {
            std::ofstream os(efile, std::ios::binary);
            require(os.good(), "run_bound: cannot open " + efile.string());
            std::vector<std::string> cols{"n", "E_eV"};
            for (std::size_t j = 0; j + 1 < edges.size(); ++j)
                cols.push_back("P_region_" + std::to_string(j + 1));
            csv::write_header(os, cols);
            for (const auto& p : pairs) {
                std::vector<double> row{static_cast<double>(p.index), p.energy};
                if (!edges.empty())
                    for (double mass : numerov::confinement_report(p, g, edges))
                        row.push_back(mass);
                csv::write_row(os, row);
            }
        }
        rep.outputs.push_back(efile.string());

        std::vector<int> modes = r.eigenfunction_modes;
        if (modes.empty())
            for (int i = 1; i <= r.n_modes; ++i) modes.push_back(i);
        const fs::path ffile = out_dir / (stem + "_eigenfunctions.csv");
        {
            std::ofstream os(ffile, std::ios::binary);
            require(os.good(), "run_bound: cannot open " + ffile.string());
            std::vector<std::string> cols{"x_nm"};
            for (int mloc : modes) cols.push_back("psi2_" + std::to_string(mloc));
            csv::write_header(os, cols);
            for (int i = 0; i < g.size(); ++i) {
                std::vector<double> row{g.x(i)};
                for (int mloc : modes) {
                    const double v = pairs[mloc - 1].psi[i];
                    row.push_back(v * v);
                }
                csv::write_row(os, row);
            }
        }
        rep.outputs.push_back(ffile.string());

        std::ostringstream line;
        line << stem << ": " << r.n_modes << " modes, E1 = "
             << csv::format_value(pairs.front().energy) << " eV";
        rep.summary.push_back(line.str());
    }
    return rep;
}

// Runs the invariant suite; returns true when every check passes.  Individual
// failures never abort the remaining checks.
inline bool run_validate(std::ostream& os) {
    bool all = true;
    os << "validation report\n";
    for (const auto& c : validate::run_all()) {
        all = all && c.pass;
        os << (c.pass ? "PASS " : "FAIL ") << c.name << ": measured "
           << csv::format_value(c.measured) << " vs threshold "
           << csv::format_value(c.threshold) << " (" << c.detail << ")\n";
    }
    os << (all ? "all checks passed\n" : "some checks FAILED\n");
    return all;
}

}  // namespace qwell1d::run
