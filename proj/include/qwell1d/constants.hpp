#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

// Unit system used throughout: energies in eV, lengths in nm, masses as
// dimensionless ratios m/m_e.  With these choices every kinetic prefactor
// reduces to hbar2_over_2me / mass_ratio.

namespace qwell1d {

using cplx = std::complex<double>;

// (hbar c)^2 / (2 m_e c^2) = 197.3269804^2 / (2 * 510998.95) eV nm^2
inline constexpr double hbar2_over_2me = 0.0380998;

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Thrown when a solver hits a numerical failure (overflow, non-convergence).
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// k = sqrt(mass_ratio (E - V) / hbar2_over_2me), taken on the branch with
// Re k >= 0 and Im k >= 0: purely real above the band edge, purely imaginary
// (evanescent) below it, exactly zero at E = V.  Continuous in E across E = V.
inline cplx wavenumber(double E, double V, double mass_ratio) {
    require(mass_ratio > 0.0, "wavenumber: mass_ratio must be > 0");
    const double k2 = mass_ratio * (E - V) / hbar2_over_2me;
    if (k2 >= 0.0) return {std::sqrt(k2), 0.0};
    return {0.0, std::sqrt(-k2)};
}

namespace detail {

// sin(k w)/k with a series branch near k = 0; exact limit w at k = 0.
inline cplx sinc_scaled(cplx k, double w) {
    const cplx kw = k * w;
    if (std::abs(kw) < 1e-6) {
        const cplx kw2 = kw * kw;
        return w * (1.0 - kw2 / 6.0 * (1.0 - kw2 / 20.0));
    }
    return std::sin(kw) / k;
}

// cos(k w) and sin(k w)/k rescaled by exp(-Im(k) w).  For evanescent k = i kappa
// these are (1 + e^{-2 kw})/2 and (1 - e^{-2 kw})/(2 kappa), bounded for any
// thickness; for real k they reduce to the plain functions.  Keeps transfer
// matrices finite for arbitrarily deep tunneling.
struct ScaledTrig {
    cplx cos_s;     // cos(k w) * exp(-Im(k) w)
    cplx sinc_s;    // sin(k w)/k * exp(-Im(k) w)
    double log_scale;  // Im(k) w
};

inline ScaledTrig scaled_trig(cplx k, double w) {
    const double kappa = k.imag();
    if (kappa <= 0.0) return {std::cos(k * w), sinc_scaled(k, w), 0.0};
    const double e2 = std::exp(-2.0 * kappa * w);
    if (kappa * w < 1e-6) {
        // tiny evanescent phase: series keeps sinc accurate
        return {cplx{0.5 * (1.0 + e2), 0.0}, sinc_scaled(k, w) * std::exp(-kappa * w),
                kappa * w};
    }
    return {cplx{0.5 * (1.0 + e2), 0.0}, cplx{(1.0 - e2) / (2.0 * kappa), 0.0},
            kappa * w};
}

}  // namespace detail
}  // namespace qwell1d
