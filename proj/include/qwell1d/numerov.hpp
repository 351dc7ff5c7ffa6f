#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "qwell1d/banded_eigen.hpp"
#include "qwell1d/constants.hpp"
#include "qwell1d/grid.hpp"

// Bound states of a potential inside an infinite well via the matrix Numerov
// discretization of psi'' = (2m/hbar^2)(V - E) psi:
//
//     [-(hbar^2/2m) B^{-1} A + V] psi = E psi
//     A = (I_{-1} - 2 I_0 + I_1) / dx^2,   B = (I_{-1} + 10 I_0 + I_1) / 12
//
// with Dirichlet truncation (the infinite well is the truncation itself).
// Because A and B are both polynomials in the same tridiagonal Toeplitz
// matrix they commute, so B^{-1}A is symmetric and the spectrum is real.
// Rather than forming B^{-1}A we solve the algebraically identical
// symmetric-definite banded pencil obtained by substituting psi = B chi:
//
//     (-(hbar^2/2m) A B + B V B) chi = E B^2 chi
//
// (pentadiagonal, B^2 positive definite), which a banded LAPACK driver
// handles directly at O(h^4) accuracy.

namespace qwell1d::numerov {

struct NumerovSystem {
    int n = 0;
    double dx = 0.0;
    double mass_ratio = 0.0;
    // tridiagonal stencil coefficients (Toeplitz)
    double a_diag = 0.0, a_off = 0.0;  // A
    double b_diag = 0.0, b_off = 0.0;  // B
    std::vector<double> vdiag;         // eV
};

struct EigenPair {
    int index = 0;            // mode number, 1-based, ascending energy
    double energy = 0.0;      // eV
    std::vector<double> psi;  // normalized: sum psi_i^2 dx = 1
};

// Builds the stencils for a constant-mass grid (position-dependent mass goes
// through the pdm module instead).
inline NumerovSystem assemble(const PotentialGrid& g) {
    g.validate();
    require(g.uniform_mass(0.0), "assemble: grid must have uniform mass");
    NumerovSystem s;
    s.n = g.size();
    s.dx = g.dx;
    s.mass_ratio = g.m.front();
    s.a_diag = -2.0 / (g.dx * g.dx);
    s.a_off = 1.0 / (g.dx * g.dx);
    s.b_diag = 10.0 / 12.0;
    s.b_off = 1.0 / 12.0;
    s.vdiag = g.v;
    return s;
}

namespace detail {

// Pentadiagonal pieces of the pencil.  With T the 0/1 adjacency of the path
// graph: A = (T - 2I)/h^2, B = (T + 10I)/12, hence
//   A B = (T^2 + 8T - 20 I) / (12 h^2),  B^2 = (T^2 + 20T + 100 I) / 144,
// and T^2 = I_{-2} + I_2 + diag(degree).  B W B for diagonal W has bandwidth 2
// with closed-form entries.
inline banded::SymBanded matrix_ab(int n, double h) {
    auto M = banded::SymBanded::zeros(n, 2);
    const double f = 1.0 / (12.0 * h * h);
    for (int i = 0; i < n; ++i) {
        const double deg = (i == 0 || i == n - 1) ? 1.0 : 2.0;
        M.at(i, i) = f * (deg - 20.0);
        if (i + 1 < n) M.at(i, i + 1) = f * 8.0;
        if (i + 2 < n) M.at(i, i + 2) = f * 1.0;
    }
    return M;
}

inline banded::SymBanded matrix_b2(int n) {
    auto M = banded::SymBanded::zeros(n, 2);
    const double f = 1.0 / 144.0;
    for (int i = 0; i < n; ++i) {
        const double deg = (i == 0 || i == n - 1) ? 1.0 : 2.0;
        M.at(i, i) = f * (deg + 100.0);
        if (i + 1 < n) M.at(i, i + 1) = f * 20.0;
        if (i + 2 < n) M.at(i, i + 2) = f * 1.0;
    }
    return M;
}

inline banded::SymBanded matrix_bwb(const std::vector<double>& w) {
    const int n = static_cast<int>(w.size());
    auto M = banded::SymBanded::zeros(n, 2);
    const double b0 = 10.0 / 12.0, b1 = 1.0 / 12.0;
    for (int i = 0; i < n; ++i) {
        double d = b0 * b0 * w[i];
        if (i > 0) d += b1 * b1 * w[i - 1];
        if (i + 1 < n) d += b1 * b1 * w[i + 1];
        M.at(i, i) = d;
        if (i + 1 < n) M.at(i, i + 1) = b0 * b1 * (w[i] + w[i + 1]);
        if (i + 2 < n) M.at(i, i + 2) = b1 * b1 * w[i + 1];
    }
    return M;
}

inline void axpy_banded(banded::SymBanded& y, double alpha, const banded::SymBanded& x) {
    for (std::size_t i = 0; i < y.ab.size(); ++i) y.ab[i] += alpha * x.ab[i];
}

// psi = B chi with the (1, 10, 1)/12 stencil.
inline std::vector<double> apply_b(const std::vector<double>& chi) {
    const int n = static_cast<int>(chi.size());
    std::vector<double> psi(n);
    for (int i = 0; i < n; ++i) {
        double s = 10.0 * chi[i];
        if (i > 0) s += chi[i - 1];
        if (i + 1 < n) s += chi[i + 1];
        psi[i] = s / 12.0;
    }
    return psi;
}

// Solves B z = y (symmetric tridiagonal Toeplitz, strictly diagonally
// dominant) by the Thomas algorithm.
inline std::vector<double> solve_b(const std::vector<double>& y) {
    const int n = static_cast<int>(y.size());
    std::vector<double> c(n), z(n);
    const double b0 = 10.0 / 12.0, b1 = 1.0 / 12.0;
    double beta = b0;
    c[0] = b1 / beta;
    z[0] = y[0] / beta;
    for (int i = 1; i < n; ++i) {
        beta = b0 - b1 * c[i - 1];
        c[i] = b1 / beta;
        z[i] = (y[i] - b1 * z[i - 1]) / beta;
    }
    for (int i = n - 2; i >= 0; --i) z[i] -= c[i] * z[i + 1];
    return z;
}

inline void normalize_and_fix_sign(std::vector<double>& psi, double dx) {
    double s = 0.0, amax = 0.0;
    for (double p : psi) {
        s += p * p;
        amax = std::max(amax, std::abs(p));
    }
    const double inv = 1.0 / std::sqrt(s * dx);
    for (double& p : psi) p *= inv;
    amax *= inv;
    for (double p : psi) {
        if (std::abs(p) > 1e-8 * amax) {
            if (p < 0.0)
                for (double& q : psi) q = -q;
            break;
        }
    }
}

// Parity classification against the well center: 0 = even, 1 = odd, by which
// reflection residual is smaller.
inline int parity_rank(const std::vector<double>& psi) {
    const int n = static_cast<int>(psi.size());
    double even = 0.0, odd = 0.0;
    for (int i = 0; i < n; ++i) {
        even = std::max(even, std::abs(psi[i] - psi[n - 1 - i]));
        odd = std::max(odd, std::abs(psi[i] + psi[n - 1 - i]));
    }
    return even <= odd ? 0 : 1;
}

}  // namespace detail

// Lowest n_modes eigenpairs, energies ascending; pairs closer than 1e-9 eV are
// ordered even-parity first for determinism.
inline std::vector<EigenPair> solve(const NumerovSystem& s, int n_modes) {
    require(n_modes >= 1 && n_modes <= s.n, "solve: need 1 <= n_modes <= N");
    const double c = hbar2_over_2me / s.mass_ratio;

    auto lhs = detail::matrix_bwb(s.vdiag);
    detail::axpy_banded(lhs, -c, detail::matrix_ab(s.n, s.dx));
    auto rhs = detail::matrix_b2(s.n);
    auto sol = banded::solve_lowest(std::move(lhs), std::move(rhs), n_modes);

    std::vector<EigenPair> out(n_modes);
    for (int j = 0; j < n_modes; ++j) {
        std::vector<double> chi(sol.vectors.begin() + static_cast<std::size_t>(j) * s.n,
                                sol.vectors.begin() + static_cast<std::size_t>(j + 1) * s.n);
        out[j].energy = sol.values[j];
        out[j].psi = detail::apply_b(chi);
        detail::normalize_and_fix_sign(out[j].psi, s.dx);
    }
    for (int j = 0; j + 1 < n_modes; ++j) {
        if (std::abs(out[j + 1].energy - out[j].energy) < 1e-9 &&
            detail::parity_rank(out[j].psi) > detail::parity_rank(out[j + 1].psi))
            std::swap(out[j], out[j + 1]);
    }
    for (int j = 0; j < n_modes; ++j) out[j].index = j + 1;
    return out;
}

// Discrete-norm residual ||(-(hbar^2/2m) B^{-1} A + V) psi - E psi||, with
// ||r|| = sqrt(sum r_i^2 dx); the eigenpair contract is <= 1e-8 max(1, |E|).
inline double eigen_residual(const NumerovSystem& s, const EigenPair& p) {
    const double c = hbar2_over_2me / s.mass_ratio;
    const int n = s.n;
    std::vector<double> apsi(n);
    for (int i = 0; i < n; ++i) {
        double v = s.a_diag * p.psi[i];
        if (i > 0) v += s.a_off * p.psi[i - 1];
        if (i + 1 < n) v += s.a_off * p.psi[i + 1];
        apsi[i] = v;
    }
    const auto z = detail::solve_b(apsi);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = -c * z[i] + s.vdiag[i] * p.psi[i] - p.energy * p.psi[i];
        acc += r * r;
    }
    return std::sqrt(acc * s.dx);
}

// Triple super-Gaussian barrier profile: sum_i V_i exp[-3 (x - 5 i)^alpha],
// barrier centers at x = 5, 10, 15 nm, x in nm.  alpha must be even (odd
// exponents make the profile asymmetric and unbounded on one side).
inline double supergaussian_potential(const std::array<double, 3>& heights, int alpha,
                                      double x) {
    require(alpha >= 2 && alpha % 2 == 0, "supergaussian_potential: alpha must be even, >= 2");
    double v = 0.0;
    for (int i = 1; i <= 3; ++i) {
        const double d = x - 5.0 * i;
        v += heights[i - 1] * std::exp(-3.0 * std::pow(d, alpha));
    }
    return v;
}

inline ScalarField supergaussian_sampler(const std::array<double, 3>& heights, int alpha) {
    require(alpha >= 2 && alpha % 2 == 0, "supergaussian_sampler: alpha must be even, >= 2");
    return [heights, alpha](double x) { return supergaussian_potential(heights, alpha, x); };
}

// Probability mass per region for the given eigenfunction.  Regions are the
// half-open intervals between consecutive edges; a sample exactly on an
// interior edge is split half/half between its neighbors, so mirror-symmetric
// regions receive mirror-symmetric weights and the masses sum to exactly the
// norm.
inline std::vector<double> confinement_report(const EigenPair& p, const PotentialGrid& g,
                                              const std::vector<double>& edges) {
    require(edges.size() >= 2, "confinement_report: need at least one region");
    const double tol = 1e-9;
    std::vector<double> mass(edges.size() - 1, 0.0);
    for (int i = 0; i < g.size(); ++i) {
        const double xi = g.x(i);
        const double w = p.psi[i] * p.psi[i] * g.dx;
        for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
            const bool on_lo = std::abs(xi - edges[j]) < tol;
            const bool on_hi = std::abs(xi - edges[j + 1]) < tol;
            const bool interior_lo = on_lo && j > 0;
            const bool interior_hi = on_hi && j + 2 < edges.size();
            if (interior_lo || interior_hi)
                mass[j] += 0.5 * w;
            else if ((xi > edges[j] || on_lo) && (xi < edges[j + 1] && !on_hi))
                mass[j] += w;
            else if (on_hi && j + 2 == edges.size())
                mass[j] += w;
        }
    }
    return mass;
}

}  // namespace qwell1d::numerov
