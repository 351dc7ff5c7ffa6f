#pragma once

#include <complex>

#include "qwell1d/constants.hpp"

namespace qwell1d {

// Amplitudes and probabilities of one scattering evaluation at energy E.
// Convention: incident wave e^{i k1 x} with x = 0 at the stack's left edge;
// t multiplies e^{i k_out x} on the far side, r multiplies e^{-i k1 x} on the
// incidence side.
struct ScatteringResult {
    double E = 0.0;        // eV
    cplx t{};
    cplx r{};
    double T = 0.0;        // flux transmission probability
    double R = 0.0;        // |r|^2
    double theta_T = 0.0;  // arg t
    double theta_R = 0.0;  // arg r
};

namespace detail {

inline ScatteringResult pack_result(double E, cplx t, cplx r, double flux_ratio = 1.0) {
    ScatteringResult res;
    res.E = E;
    res.t = t;
    res.r = r;
    res.T = flux_ratio * std::norm(t);
    res.R = std::norm(r);
    res.theta_T = std::arg(t);
    res.theta_R = std::arg(r);
    return res;
}

}  // namespace detail
}  // namespace qwell1d
