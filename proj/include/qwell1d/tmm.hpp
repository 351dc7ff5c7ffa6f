#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qwell1d/constants.hpp"
#include "qwell1d/scattering.hpp"
#include "qwell1d/structure.hpp"

// Transfer-matrix scattering for arbitrary piecewise-constant stacks.  Serves
// as the independent numerical cross-check for every closed form in
// analytic.hpp and as the solver for stacks outside their domain (unequal
// lateral barriers, per-layer masses, unequal leads).
//
// Interfaces match psi and psi'/m (current conservation with per-layer mass);
// for uniform mass this reduces to standard plane-wave matching.

namespace qwell1d::tmm {

// 2x2 complex matrix relating plane-wave amplitudes (A, B) of psi =
// A e^{ikx} + B e^{-ikx}: (A, B)_left = M (A, B)_right, amplitudes referenced
// at the left/right face of the slab it describes.  Composition runs
// left-to-right: M_total = M_1 M_2 ... M_n for layers in geometric order,
// incidence from the left.  For real stacks with propagating leads,
// det M = (k_out/m_out) / (k_in/m_in): flux-weighted, = k_out/k_in for equal
// masses.
struct TransferMatrix {
    cplx m11{1.0}, m12{}, m21{}, m22{1.0};

    cplx det() const { return m11 * m22 - m12 * m21; }

    TransferMatrix operator*(const TransferMatrix& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }
};

// Slab matrix of one layer between media with wavenumbers/masses
// (left_k, left_mass) and (right_k, right_mass): both interface matchings plus
// the intra-layer propagation, written with cos(kw) and sin(kw)/k so the
// band edge k = 0 inside the layer is regular.  Entries grow like e^{Im(k) w};
// scatter() uses a rescaled path internally for deep tunneling.
inline TransferMatrix layer_matrix(double E, const Layer& layer, cplx left_k,
                                   double left_mass, cplx right_k,
                                   double right_mass) {
    layer.validate();
    const cplx i{0.0, 1.0};
    const cplx k = wavenumber(E, layer.height, layer.mass_ratio);
    const double w = layer.width;
    const cplx C = std::cos(k * w);
    const cplx S = detail::sinc_scaled(k, w);
    const cplx gl = i * left_k / left_mass;
    const cplx gr = i * right_k / right_mass;
    const double m = layer.mass_ratio;

    TransferMatrix M;
    M.m11 = 0.5 * ((C - S * m * gr) + (k * k * S / m + gr * C) / gl);
    M.m12 = 0.5 * ((C + S * m * gr) + (k * k * S / m - gr * C) / gl);
    M.m21 = 0.5 * ((C - S * m * gr) - (k * k * S / m + gr * C) / gl);
    M.m22 = 0.5 * ((C + S * m * gr) - (k * k * S / m - gr * C) / gl);
    return M;
}

namespace detail {

using qwell1d::detail::scaled_trig;

// Transfer of (psi, psi'/m) across one layer, rescaled by e^{-Im(k) w}.
// det of the unscaled matrix is exactly 1; entries here stay bounded for any
// barrier thickness.
struct ValueTransfer {
    cplx w11, w12, w21, w22;
    double log_scale;
};

inline ValueTransfer layer_value_transfer(double E, const Layer& layer) {
    const cplx k = wavenumber(E, layer.height, layer.mass_ratio);
    const auto [c_s, s_s, ls] = scaled_trig(k, layer.width);
    const double m = layer.mass_ratio;
    return {c_s, m * s_s, -k * k * s_s / m, c_s, ls};
}

}  // namespace detail

// Scattering amplitudes of the full stack at energy E (incidence from the
// left).  E must lie above the lead potential.
inline ScatteringResult scatter(const LayeredStructure& s, double E) {
    s.validate();
    require(E > s.lead_potential,
            "scatter: E must exceed the lead potential (propagating incident wave)");

    const cplx i{0.0, 1.0};
    const cplx k_in = wavenumber(E, s.lead_potential, s.lead_mass_ratio);
    const cplx k_out = k_in;  // identical leads
    const cplx g_in = i * k_in / s.lead_mass_ratio;
    const cplx g_out = i * k_out / s.lead_mass_ratio;

    // accumulate (psi, psi'/m) transfer left wall -> right wall
    cplx w11{1.0}, w12{}, w21{}, w22{1.0};
    double log_scale = 0.0;
    for (const auto& layer : s.layers) {
        const auto L = detail::layer_value_transfer(E, layer);
        const cplx n11 = L.w11 * w11 + L.w12 * w21;
        const cplx n12 = L.w11 * w12 + L.w12 * w22;
        const cplx n21 = L.w21 * w11 + L.w22 * w21;
        const cplx n22 = L.w21 * w12 + L.w22 * w22;
        w11 = n11; w12 = n12; w21 = n21; w22 = n22;
        log_scale += L.log_scale;
    }

    // boundary values: left (1 + r, g_in (1 - r)), right (t_loc, g_out t_loc).
    // Eliminating r gives 1/t as a single sum, free of the catastrophic
    // cancellation a naive extraction suffers under deep tunneling:
    //   t_loc = 2 / [w22 - g_out w12 + (g_out w11 - w21)/g_in]
    const cplx denom = w22 - g_out * w12 + (g_out * w11 - w21) / g_in;
    if (!std::isfinite(denom.real()) || !std::isfinite(denom.imag()) ||
        denom == cplx{0.0, 0.0})
        throw numerical_error("scatter: singular transfer composition");

    const cplx diff = w22 - g_out * w12 - (g_out * w11 - w21) / g_in;
    const cplx r = diff / denom;
    const cplx t_loc = 2.0 * std::exp(-log_scale) / denom;
    const cplx t = t_loc * std::exp(-i * k_out * s.total_width());

    const double flux_ratio = 1.0;  // identical leads
    return qwell1d::detail::pack_result(E, t, r, flux_ratio);
}

}  // namespace qwell1d::tmm
