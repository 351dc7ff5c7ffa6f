#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "qwell1d/analytic.hpp"
#include "qwell1d/grid.hpp"
#include "qwell1d/numerov.hpp"
#include "qwell1d/pdm.hpp"
#include "qwell1d/sweep.hpp"
#include "qwell1d/tmm.hpp"

// Self-contained invariant suite behind the `validate` CLI mode: each check
// reports the measured figure of merit against its pinned threshold.  The
// checks take their engines as std::function so tests can inject corrupted
// variants as negative controls.

namespace qwell1d::validate {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;   // the figure of merit
    double threshold = 0.0;  // pass iff measured <= threshold (or >= for slope)
    std::string detail;
};

using TFunction = std::function<double(double)>;  // E -> T

namespace detail {

inline TFunction dqwtb_T(double v1, double a, double l1, double v2, double b, double l2,
                         double mass) {
    return [=](double E) { return analytic::dqwtb(E, v1, a, l1, v2, b, l2, mass).T; };
}

inline TFunction tmm_T(const LayeredStructure& s) {
    return [s](double E) { return tmm::scatter(s, E).T; };
}

}  // namespace detail

// max |T_a(E) - T_b(E)| over the grid.
inline double max_abs_dT(const TFunction& a, const TFunction& b, const EnergyGrid& grid) {
    double worst = 0.0;
    for (int i = 0; i < grid.n_points; ++i) {
        const double E = grid.energy(i);
        worst = std::max(worst, std::abs(a(E) - b(E)));
    }
    return worst;
}

// Closed forms against the transfer-matrix solver on their shared domain.
// `analytic_override` (when set) replaces the triple-barrier closed form; the
// test suite uses it to prove the check catches a corrupted formula.
inline CheckResult check_oracle_equivalence(const TFunction* analytic_override = nullptr) {
    const double m = 0.067;
    const EnergyGrid grid{0.01, 1.0, 2000};
    double worst = 0.0;
    std::string where = "none";

    struct Case {
        std::string name;
        TFunction closed;
        LayeredStructure stack;
    };
    std::vector<Case> cases;
    cases.push_back({"single_barrier",
                     [m](double E) { return analytic::single_barrier(E, 0.4655, 2.5, m).T; },
                     make_single_barrier(0.4655, 2.5, m)});
    cases.push_back({"sqw_db",
                     [m](double E) { return analytic::sqw_db(E, 0.4655, 2.5, 6.5, 0.4655, 2.5, m).T; },
                     make_sqw_db(0.4655, 2.5, 6.5, 0.4655, 2.5, m)});
    const struct { double v1, v2; } dq[] = {{0.4655, 0.3258}, {1.0, 0.5}, {1.0, 2.0}};
    for (const auto& p : dq) {
        const double v2 = p.v2, v1 = p.v1;
        TFunction closed = detail::dqwtb_T(v1, 2.5, 2.5, v2, 1.5, 2.5, m);
        if (analytic_override) closed = *analytic_override;
        cases.push_back({"dqwtb", closed, make_dqwtb(v1, 2.5, 2.5, v2, 1.5, 2.5, m)});
        if (analytic_override) break;
    }
    for (const auto& c : cases) {
        const double d = max_abs_dT(c.closed, detail::tmm_T(c.stack), grid);
        if (d > worst) {
            worst = d;
            where = c.name;
        }
    }
    return {"oracle-equivalence (analytic vs tmm, max |dT|)", worst < 1e-8, worst, 1e-8,
            "worst case: " + where};
}

// T + R = 1 at every swept energy for real stacks.
inline CheckResult check_flux_conservation() {
    const double m = 0.067;
    const EnergyGrid grid{0.01, 1.0, 1000};
    std::vector<LayeredStructure> stacks{
        make_single_barrier(0.4655, 2.5, m),
        make_dqwtb(0.4655, 2.5, 2.5, 0.3258, 1.5, 2.5, m),
        make_dqwtb(1.0, 2.5, 2.5, 2.0, 1.5, 2.5, m),
        // unequal lateral barriers: outside the closed forms' domain
        {{{2.5, 1.0, m}, {2.5, 0.0, m}, {1.5, 2.0, m}, {2.5, 0.0, m}, {2.0, 0.8, m}}, 0.0, m}};
    double worst = 0.0;
    for (const auto& s : stacks) {
        for (int i = 0; i < grid.n_points; ++i) {
            const auto res = tmm::scatter(s, grid.energy(i));
            worst = std::max(worst, std::abs(res.T + res.R - 1.0));
        }
    }
    return {"flux conservation (max |T + R - 1|)", worst < 1e-10, worst, 1e-10,
            "4 stacks x 1000 energies"};
}

// Empty-well eigenvalue error must shrink as dx^4; slope measured on mode 10
// over steps that divide the 21 nm well exactly.
inline CheckResult check_convergence_order(double dx_scale = 1.0) {
    const double m = 0.067, W = 21.0;
    const double exact = 100.0 * hbar2_over_2me * M_PI * M_PI / (m * W * W);
    const std::vector<double> steps{0.084, 0.042, 0.021, 0.0105};
    std::vector<double> lg_h, lg_e;
    for (double h : steps) {
        const double hh = h * dx_scale;
        auto g = build_grid(W, hh, constant_field(0.0), constant_field(m));
        auto pairs = numerov::solve(numerov::assemble(g), 10);
        lg_h.push_back(std::log(hh));
        lg_e.push_back(std::log(std::abs(pairs[9].energy - exact)));
    }
    // least-squares slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(lg_h.size());
    for (int i = 0; i < n; ++i) {
        sx += lg_h[i]; sy += lg_e[i]; sxx += lg_h[i] * lg_h[i]; sxy += lg_h[i] * lg_e[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {"convergence order (empty-well mode 10, log-log slope)",
            std::abs(slope - 4.0) <= 0.3, slope, 4.0, "steps 0.084 .. 0.0105 nm"};
}

// Constant-mass PDM must reduce to the plain Numerov solver.
inline CheckResult check_pdm_reduction() {
    const double m = 0.067;
    auto s = make_dqwtb(1.0, 3.0, 3.0, 1.0, 3.0, 3.0, m);
    auto g = build_grid(21.0, 0.005, placed_potential(s, 3.0), constant_field(m));
    auto ref = numerov::solve(numerov::assemble(g), 6);
    auto red = pdm::solve_pdm(g, pdm::MassProfile::constant(m), pdm::VonRoosParams{}, 6);
    double worst = 0.0;
    for (int i = 0; i < 6; ++i)
        worst = std::max(worst,
                         std::abs(red[i].energy - ref[i].energy) / std::abs(ref[i].energy));
    return {"PDM constant-mass reduction (max rel dE)", worst < 1e-9, worst, 1e-9,
            "6 modes, 1 eV triple-barrier structure"};
}

// Wave-equation residuals of PDM eigenpairs for the two smooth profile kinds.
inline CheckResult check_residuals() {
    const double m = 0.067;
    const pdm::VonRoosParams vr{};
    double worst_margin = 0.0;  // measured / threshold, want < 1
    for (int which = 0; which < 2; ++which) {
        const auto prof = which == 0
                              ? pdm::MassProfile::smooth_step(m, 0.02, 10.5, 1.0)
                              : pdm::MassProfile::gaussian_bump(m, 0.03, 10.5, 1.5);
        auto g = build_grid(21.0, 0.005, constant_field(0.0),
                            [&prof](double x) { return prof.m(x); });
        auto pairs = pdm::solve_pdm(g, prof, vr, 10);
        for (const auto& p : pairs) {
            const double res = pdm::residual_check(p, g, prof, vr);
            const double thr = 1e-5 * std::max(1.0, std::abs(p.energy));
            worst_margin = std::max(worst_margin, res / thr);
        }
    }
    return {"PDM residual check (worst residual / threshold)", worst_margin < 1.0,
            worst_margin, 1.0, "smooth-step and gaussian-bump, 10 modes each"};
}

inline std::vector<CheckResult> run_all() {
    return {check_flux_conservation(), check_oracle_equivalence(), check_convergence_order(),
            check_pdm_reduction(), check_residuals()};
}

}  // namespace qwell1d::validate
