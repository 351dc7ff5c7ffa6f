#pragma once

#include <cmath>
#include <complex>

#include "qwell1d/constants.hpp"
#include "qwell1d/scattering.hpp"

// Closed-form scattering amplitudes for the three canonical stacks: a single
// rectangular barrier, a single quantum well between two barriers (SQW-DB),
// and the symmetric double-well triple-barrier cavity (DQW-TB, equal lateral
// barriers).  All wells sit at the lead potential (0 eV); leads and layers
// share one mass ratio.
//
// Phase convention: the incident wave is e^{i k1 x} with x = 0 at the left
// edge of the stack, and the stored t is the coefficient of e^{i k1 x} on the
// far side (so t = 1 exactly when the stack is transparent).  This matches the
// transfer-matrix solver, which is the independent cross-check for every
// formula here.

namespace qwell1d::analytic {

using qwell1d::ScatteringResult;

namespace detail {

using qwell1d::detail::scaled_trig;

struct BarrierAmps {
    cplx t;  // includes the e^{-i k1 w} factor (left-edge convention)
    cplx r;
};

// Amplitudes of one rectangular barrier of width w and height v0:
//   t = 2 k1 k2 e^{-i k1 w} / [2 k1 k2 cos(k2 w) - i (k1^2 + k2^2) sin(k2 w)]
//   r = (k1^2 - k2^2) sin(k2 w) / [(k1^2 + k2^2) sin(k2 w) + 2 i k1 k2 cos(k2 w)]
// evaluated with sin(k2 w)/k2 so the band edge k2 = 0 is regular, and with the
// e^{-Im k2 w} rescaling so thick evanescent barriers underflow to t = 0
// instead of overflowing.
inline BarrierAmps barrier_amps(double E, double v0, double w, double mass) {
    const cplx k1 = wavenumber(E, 0.0, mass);
    const cplx k2 = wavenumber(E, v0, mass);
    const auto [c_s, s_s, log_scale] = scaled_trig(k2, w);
    const cplx k1sq = k1 * k1, k2sq = k2 * k2;
    const cplx i{0.0, 1.0};

    const cplx denom_t = 2.0 * k1 * c_s - i * (k1sq + k2sq) * s_s;
    const cplx t = 2.0 * k1 * std::exp(-i * k1 * w) * std::exp(-log_scale) / denom_t;
    const cplx r = (k1sq - k2sq) * s_s / ((k1sq + k2sq) * s_s + 2.0 * i * k1 * c_s);
    return {t, r};
}

using qwell1d::detail::pack_result;

}  // namespace detail

// Single rectangular barrier of height v0 and width a.
inline ScatteringResult single_barrier(double E, double v0, double a, double mass) {
    require(E > 0.0, "single_barrier: need E > 0 (propagating lead mode)");
    require(a > 0.0, "single_barrier: width must be > 0");
    const auto [t, r] = detail::barrier_amps(E, v0, a, mass);
    return detail::pack_result(E, t, r);
}

// Two barriers (v_left, a) and (v_right, b) separated by a well of width L.
// t is the Fabry-Perot sum t1 t2 / (1 - r1 r2 e^{2 i k1 L}) in the left-edge
// convention; r adds the multiple reflections off the far barrier.
inline ScatteringResult sqw_db(double E, double v_left, double a, double L,
                               double v_right, double b, double mass) {
    require(E > 0.0, "sqw_db: need E > 0");
    require(a > 0.0 && b >= 0.0, "sqw_db: widths must be positive (b may be 0)");
    require(L >= 0.0, "sqw_db: well width must be >= 0");
    const cplx k1 = wavenumber(E, 0.0, mass);
    const cplx i{0.0, 1.0};
    const auto [t1, r1] = detail::barrier_amps(E, v_left, a, mass);
    const auto [t2, r2] = b > 0.0 ? detail::barrier_amps(E, v_right, b, mass)
                                  : detail::BarrierAmps{1.0, 0.0};
    const cplx loopb = r1 * r2 * std::exp(2.0 * i * k1 * L);
    const cplx t = t1 * t2 / (1.0 - loopb);
    const cplx r = r1 + t1 * t1 * r2 * std::exp(2.0 * i * k1 * (a + L)) / (1.0 - loopb);
    return detail::pack_result(E, t, r);
}

// Symmetric triple-barrier cavity: lateral barriers (v1, a), central barrier
// (v2, b), wells l1 and l2.  The closed form for t is
//
//   t = t1^2 t2 / [ 2 r1 r2 cos(k1 (l2 - l1)) e^{i k1 (l1 + l2)}  -  1
//                   + (t2/t1p) r1^2 e^{2 i k1 (l1 + l2)} ]
//
// where t1p equals t2 with the sign of the i(k1^2+k3^2)sin term flipped in the
// denominator.  With every barrier amplitude carrying its e^{-i k1 w} factor
// this is algebraically identical to composing the three barriers with
// Fabry-Perot sums (the overall sign is -1 in the left-edge convention), and
// it matches the transfer-matrix solver to ~1e-14 in T.  Note t2/t1p is the
// pure ratio of the two denominators, so the prefactors cancel there.
inline ScatteringResult dqwtb(double E, double v1, double a, double l1, double v2,
                              double b, double l2, double mass) {
    require(E > 0.0, "dqwtb: need E > 0");
    require(a > 0.0 && b >= 0.0, "dqwtb: barrier widths must be positive (b may be 0)");
    require(l1 >= 0.0 && l2 >= 0.0, "dqwtb: well widths must be >= 0");
    const cplx k1 = wavenumber(E, 0.0, mass);
    const cplx i{0.0, 1.0};
    const auto [t1, r1] = detail::barrier_amps(E, v1, a, mass);

    cplx t2{1.0, 0.0}, r2{0.0, 0.0}, ratio{1.0, 0.0};  // b = 0: central barrier absent
    if (b > 0.0) {
        const auto amps = detail::barrier_amps(E, v2, b, mass);
        t2 = amps.t;
        r2 = amps.r;
        const cplx k3 = wavenumber(E, v2, mass);
        const auto [c_s, s_s, ls] = qwell1d::detail::scaled_trig(k3, b);
        const cplx dm = 2.0 * k1 * c_s - i * (k1 * k1 + k3 * k3) * s_s;
        const cplx dp = 2.0 * k1 * c_s + i * (k1 * k1 + k3 * k3) * s_s;
        ratio = dp / dm;  // t2 / t1p
    }

    const cplx phase = std::exp(i * k1 * (l1 + l2));
    const cplx den = 2.0 * r1 * r2 * std::cos(k1 * (l2 - l1)) * phase - 1.0 +
                     ratio * r1 * r1 * phase * phase;
    const cplx t = -(t1 * t1 * t2) / den;  // -1: left-edge convention

    // reflection via the nested Fabry-Perot sums (same building blocks)
    const cplx loop2 = r1 * r2 * std::exp(2.0 * i * k1 * l2);
    const cplx rX = r2 * std::exp(2.0 * i * k1 * (a + l1)) +
                    t2 * t2 * r1 * std::exp(2.0 * i * k1 * (a + l1 + b + l2)) /
                        (1.0 - loop2);
    const cplx r = r1 + t1 * t1 * rX / (1.0 - r1 * std::exp(-2.0 * i * k1 * a) * rX);
    return detail::pack_result(E, t, r);
}

}  // namespace qwell1d::analytic
