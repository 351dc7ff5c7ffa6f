#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qwell1d/constants.hpp"
#include "qwell1d/scattering.hpp"

namespace qwell1d {

// Uniform energy grid, endpoints included.
struct EnergyGrid {
    double e_min = 0.0;
    double e_max = 0.0;
    int n_points = 0;

    void validate() const {
        require(n_points >= 2, "EnergyGrid: need at least 2 points");
        require(e_min < e_max, "EnergyGrid: e_min must be < e_max");
    }

    double energy(int i) const {
        return e_min + (e_max - e_min) * static_cast<double>(i) / (n_points - 1);
    }
};

struct SweepRow {
    ScatteringResult res;
    bool ok = true;
    std::string error;  // set when ok == false
};

struct SweepTable {
    EnergyGrid grid;
    std::vector<SweepRow> rows;  // ascending in E
};

// Evaluates `engine` at every grid energy.  A per-point failure is recorded as
// a NaN row with its message; it never aborts the sweep.
inline SweepTable sweep(const std::function<ScatteringResult(double)>& engine,
                        const EnergyGrid& grid) {
    grid.validate();
    SweepTable table;
    table.grid = grid;
    table.rows.reserve(grid.n_points);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < grid.n_points; ++i) {
        const double E = grid.energy(i);
        SweepRow row;
        try {
            row.res = engine(E);
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
            row.res = ScatteringResult{E, {nan, nan}, {nan, nan}, nan, nan, nan, nan};
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

struct Peak {
    double E;  // parabola-refined position
    double T;  // parabola-refined height
};

// Strict local maxima of T(E) with T >= min_height, each refined by one
// parabolic interpolation through the three bracketing samples.  Failed rows
// break the neighbor chain; a monotone table yields no peaks.
inline std::vector<Peak> find_peaks(const SweepTable& table, double min_height) {
    std::vector<Peak> peaks;
    const auto& rows = table.rows;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        if (!rows[i - 1].ok || !rows[i].ok || !rows[i + 1].ok) continue;
        const double tm = rows[i - 1].res.T, t0 = rows[i].res.T, tp = rows[i + 1].res.T;
        if (!(t0 > tm && t0 > tp) || t0 < min_height) continue;
        const double h = rows[i].res.E - rows[i - 1].res.E;
        const double curv = tm - 2.0 * t0 + tp;
        double dE = 0.0, dT = 0.0;
        if (curv < 0.0) {
            dE = 0.5 * h * (tm - tp) / curv;
            dT = -0.125 * (tm - tp) * (tm - tp) / curv;
        }
        peaks.push_back({rows[i].res.E + dE, t0 + dT});
    }
    return peaks;
}

}  // namespace qwell1d
