#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qwell1d/grid.hpp"
#include "qwell1d/numerov.hpp"
#include "qwell1d/pdm.hpp"
#include "reference_values.hpp"

using namespace qwell1d;
using Catch::Approx;

namespace {

constexpr double kMass = 0.067;

// 4th-order centered differences used by the test-side oracles.
double fd1(const std::vector<double>& y, int i, double h) {
    return (-y[i + 2] + 8.0 * y[i + 1] - 8.0 * y[i - 1] + y[i - 2]) / (12.0 * h);
}
double fd2(const std::vector<double>& y, int i, double h) {
    return (-y[i + 2] + 16.0 * y[i + 1] - 30.0 * y[i] + 16.0 * y[i - 1] - y[i - 2]) /
           (12.0 * h * h);
}

}  // namespace

TEST_CASE("von Roos parameter bookkeeping") {
    SECTION("ordering constraint is enforced") {
        pdm::VonRoosParams bad{0.0, -0.9, 0.0, {}};
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    }
    SECTION("BenDaniel-Duke ordering gives t = s = 0") {
        pdm::VonRoosParams p{};  // alpha = gamma = 0, beta = -1
        p.validate();
        CHECK(p.t_param() == 0.0);
        CHECK(p.s_param() == 0.0);
    }
    SECTION("printed coefficient evaluates to 2 (alpha - gamma)") {
        pdm::VonRoosParams p{0.25, -0.9, -0.35, {}};
        p.validate();
        CHECK(p.s_param() == Approx(2.0 * (0.25 - (-0.35))).margin(1e-14));
        // equal alpha and gamma kill the m'^2 term of the wave equation
        pdm::VonRoosParams sym{-0.3, -0.4, -0.3, {}};
        CHECK(sym.s_param() == 0.0);
    }
    SECTION("s can be overridden for other literature conventions") {
        pdm::VonRoosParams p{0.25, -0.9, -0.35, 0.77};
        CHECK(p.s_param() == 0.77);
    }
}

TEST_CASE("mass profiles") {
    SECTION("analytic derivatives agree with finite differences") {
        const auto profs = {pdm::MassProfile::smooth_step(0.067, 0.03, 10.0, 1.3),
                            pdm::MassProfile::gaussian_bump(0.067, 0.05, 9.0, 2.0)};
        const double h = 1e-4;
        for (const auto& p : profs) {
            for (double x : {4.0, 8.7, 10.0, 12.3, 17.0}) {
                const double d1 = (p.m(x + h) - p.m(x - h)) / (2.0 * h);
                const double d2 = (p.m(x + h) - 2.0 * p.m(x) + p.m(x - h)) / (h * h);
                CHECK(p.m1(x) == Approx(d1).margin(1e-7));
                CHECK(p.m2(x) == Approx(d2).margin(1e-5));
            }
        }
    }
    SECTION("tabulated kind differentiates its samples") {
        const double dx = 0.01;
        std::vector<double> samples;
        for (int i = 0; i < 2099; ++i) {
            const double x = (i + 1) * dx;
            samples.push_back(0.067 + 0.02 * std::sin(0.4 * x));
        }
        const auto p = pdm::MassProfile::tabulated(dx, dx, samples);
        for (double x : {3.0, 9.99, 15.5}) {
            CHECK(p.m1(x) == Approx(0.02 * 0.4 * std::cos(0.4 * x)).margin(1e-6));
            CHECK(p.m2(x) == Approx(-0.02 * 0.16 * std::sin(0.4 * x)).margin(1e-5));
        }
    }
    SECTION("non-positive masses are rejected") {
        CHECK_THROWS_AS(pdm::MassProfile::constant(0.0), std::invalid_argument);
        CHECK_THROWS_AS(pdm::MassProfile::gaussian_bump(0.05, -0.06, 10.0, 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("effective potential") {
    SECTION("constant mass leaves the potential untouched") {
        const pdm::VonRoosParams vr{};
        for (double v : {-0.3, 0.0, 2.5})
            CHECK(pdm::effective_potential(v, 0.067, 0.0, 0.0, vr) == v);
    }
    SECTION("closed form equals a finite-difference reconstruction") {
        // rebuild V_eff from m sampled on a fine mesh, derivatives by FD
        const auto prof = pdm::MassProfile::gaussian_bump(0.067, 0.03, 12.0, 2.0);
        const pdm::VonRoosParams vr{0.25, -0.9, -0.35, {}};
        const double h = 1e-3;
        for (double x : {6.0, 10.0, 12.0, 14.5}) {
            const double m = prof.m(x);
            const double m1 = (prof.m(x + h) - prof.m(x - h)) / (2.0 * h);
            const double m2 = (prof.m(x + h) - 2.0 * m + prof.m(x - h)) / (h * h);
            const double direct = pdm::effective_potential(0.2, prof.m(x), prof.m1(x),
                                                           prof.m2(x), vr);
            const double fd = pdm::effective_potential(0.2, m, m1, m2, vr);
            CHECK(direct == Approx(fd).margin(1e-8));
        }
    }
    SECTION("operator identity: transformed equation reproduces the original") {
        // For arbitrary smooth phi and m the identity
        //   L1[sqrt(m) phi] = sqrt(m) L2[phi]
        // must hold, where L1 is the first-derivative wave operator and L2 the
        // transformed operator with V_eff.  This validates the closed form of
        // V_eff independently of any eigensolve.
        const double W = 21.0, dx = 0.002, E = 0.37;
        const pdm::VonRoosParams vr{0.25, -0.9, -0.35, {}};
        const double t = vr.t_param(), s = vr.s_param();
        const auto prof = pdm::MassProfile::gaussian_bump(0.067, 0.03, 12.0, 2.0);
        const int n = static_cast<int>(std::round(W / dx)) - 1;
        std::vector<double> phi(n), psi(n), m(n), m1(n), m2(n), v(n);
        for (int i = 0; i < n; ++i) {
            const double x = (i + 1) * dx;
            phi[i] = std::sin(3.0 * M_PI * x / W) + 0.3 * std::cos(7.0 * M_PI * x / W - 1.0);
            m[i] = prof.m(x);
            m1[i] = prof.m1(x);
            m2[i] = prof.m2(x);
            v[i] = 0.3 * std::sin(2.0 * M_PI * x / W);
            psi[i] = std::sqrt(m[i]) * phi[i];
        }
        double worst = 0.0;
        for (int i = 2; i + 2 < n; ++i) {
            const double L1 = fd2(psi, i, dx) - (m1[i] / m[i]) * fd1(psi, i, dx) +
                              (0.5 * (t * m2[i] / m[i] - s * m1[i] * m1[i] / (m[i] * m[i])) +
                               (m[i] / hbar2_over_2me) * (E - v[i])) *
                                  psi[i];
            const double veff = pdm::effective_potential(v[i], m[i], m1[i], m2[i], vr);
            const double L2 = fd2(phi, i, dx) +
                              (m[i] / hbar2_over_2me) * (E - veff) * phi[i];
            worst = std::max(worst, std::abs(L1 - std::sqrt(m[i]) * L2));
        }
        CHECK(worst < 1e-8);
    }
    SECTION("rejects non-positive mass") {
        CHECK_THROWS_AS(pdm::effective_potential(0.0, -0.01, 0.0, 0.0, pdm::VonRoosParams{}),
                        std::invalid_argument);
    }
}

TEST_CASE("constant-mass reduction to the plain solver") {
    const auto s = make_dqwtb(1.0, 3.0, 3.0, 1.0, 3.0, 3.0, kMass);
    auto g = build_grid(21.0, 0.005, placed_potential(s, 3.0), constant_field(kMass));
    const auto ref = numerov::solve(numerov::assemble(g), 6);
    const auto red =
        pdm::solve_pdm(g, pdm::MassProfile::constant(kMass), pdm::VonRoosParams{}, 6);
    for (int i = 0; i < 6; ++i) {
        CHECK(red[i].energy ==
              Approx(ref[i].energy).epsilon(1e-9));
        // eigenfunctions agree too (same discrete problem)
        double dot = 0.0;
        for (std::size_t k = 0; k < red[i].psi.size(); ++k)
            dot += red[i].psi[k] * ref[i].psi[k];
        CHECK(std::abs(dot * g.dx) == Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("empty well with constant mass follows the box law") {
    auto g = build_grid(21.0, 0.005, constant_field(0.0), constant_field(kMass));
    const auto pairs =
        pdm::solve_pdm(g, pdm::MassProfile::constant(kMass), pdm::VonRoosParams{}, 5);
    for (int n = 1; n <= 5; ++n)
        CHECK(pairs[n - 1].energy ==
              Approx(n * n * hbar2_over_2me * M_PI * M_PI / (kMass * 441.0)).epsilon(1e-4));
}

TEST_CASE("residual check") {
    const pdm::VonRoosParams vr{};

    SECTION("smooth profiles pass with wide margin; corruption is caught") {
        const auto profiles = {pdm::MassProfile::smooth_step(kMass, 0.02, 10.5, 1.0),
                               pdm::MassProfile::gaussian_bump(kMass, 0.03, 10.5, 1.5)};
        for (const auto& prof : profiles) {
            auto g = build_grid(21.0, 0.005, constant_field(0.0),
                                [&prof](double x) { return prof.m(x); });
            const auto pairs = pdm::solve_pdm(g, prof, vr, 10);
            for (const auto& p : pairs) {
                const double thr = 1e-5 * std::max(1.0, std::abs(p.energy));
                CHECK(pdm::residual_check(p, g, prof, vr) <= thr);
                // normalization after the sqrt(m) back-substitution
                double norm = 0.0;
                for (double val : p.psi) norm += val * val;
                CHECK(norm * g.dx == Approx(1.0).margin(1e-9));
            }
            // negative control: a corrupted eigenfunction must fail loudly
            auto bad = pairs[0];
            for (std::size_t i = 0; i < bad.psi.size(); ++i)
                bad.psi[i] += 0.01 * std::sin(17.0 * M_PI * g.x(i) / 21.0);
            CHECK(pdm::residual_check(bad, g, prof, vr) >
                  100.0 * 1e-5 * std::max(1.0, std::abs(bad.energy)));
        }
    }
    SECTION("grid-sampled (tabulated) route stays below threshold") {
        const auto prof = pdm::MassProfile::smooth_step(kMass, 0.02, 10.5, 1.0);
        auto g = build_grid(21.0, 0.005, constant_field(0.0),
                            [&prof](double x) { return prof.m(x); });
        const auto pairs = pdm::solve_pdm(g, vr, 5);  // derivatives from grid samples
        for (const auto& p : pairs)
            CHECK(pdm::residual_check(p, g, vr) <= 1e-5 * std::max(1.0, std::abs(p.energy)));
    }
}

TEST_CASE("mass bump near the central barrier localizes the lowest doublet") {
    // Regression fixture: V1 = V2 = 5 eV structure, gaussian mass bump
    // m(x) = 0.067 + 0.20 exp(-(x - 10)^2 / (2 * 1.5^2)).  The bump suppresses
    // tunneling through the central barrier and its off-center placement
    // detunes the two inner wells, so psi_1 settles between the central and
    // left lateral barrier and psi_2 mirrors it on the right.
    const auto s = make_dqwtb(5.0, 3.0, 3.0, 5.0, 3.0, 3.0, kMass);
    const auto prof = pdm::MassProfile::gaussian_bump(kMass, 0.20, 10.0, 1.5);
    auto g = build_grid(21.0, 0.005, placed_potential(s, 3.0),
                        [&prof](double x) { return prof.m(x); });
    const auto pairs = pdm::solve_pdm(g, prof, pdm::VonRoosParams{}, 3);

    CHECK(pairs[0].energy == Approx(refs::pdm_fixture_E1).margin(1e-7));
    CHECK(pairs[1].energy == Approx(refs::pdm_fixture_E2).margin(1e-7));
    CHECK(pairs[2].energy == Approx(refs::pdm_fixture_E3).margin(1e-7));

    const std::vector<double> edges{0.0, 3.0, 6.0, 9.0, 12.0, 15.0, 18.0, 21.0};
    const auto m1 = numerov::confinement_report(pairs[0], g, edges);
    const auto m2 = numerov::confinement_report(pairs[1], g, edges);
    CHECK(m1[2] == Approx(refs::pdm_fixture_psi1_in_left_well).margin(1e-4));
    CHECK(m2[4] == Approx(refs::pdm_fixture_psi2_in_right_well).margin(1e-4));
    CHECK(m1[2] > 0.95);   // psi_1: left inner well [6, 9)
    CHECK(m2[4] > 0.95);   // psi_2: right inner well [12, 15)
    CHECK(m1[4] < 0.02);
    CHECK(m2[2] < 0.02);

    // residual closure on the fixture
    for (const auto& p : pairs)
        CHECK(pdm::residual_check(p, g, prof, pdm::VonRoosParams{}) <
              1e-5 * std::max(1.0, std::abs(p.energy)));
}
