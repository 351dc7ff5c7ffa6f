#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "qwell1d/constants.hpp"
#include "qwell1d/structure.hpp"

namespace qwell1d {

// Uniform mesh of the interior of an infinite well.  The well spans
// [x0 - dx, x0 + N dx] with Dirichlet psi = 0 on both walls; the N samples sit
// at x_i = x0 + i dx.  v and m are sampled at the nodes.
struct PotentialGrid {
    double x0 = 0.0;            // first interior node (nm)
    double dx = 0.0;            // mesh step (nm)
    std::vector<double> v;      // eV
    std::vector<double> m;      // m/m_e

    int size() const { return static_cast<int>(v.size()); }
    double x(int i) const { return x0 + i * dx; }
    double domain_width() const { return (size() + 1) * dx; }

    bool uniform_mass(double tol = 0.0) const {
        for (double mi : m)
            if (std::abs(mi - m.front()) > tol) return false;
        return true;
    }

    void validate() const {
        require(dx > 0.0, "PotentialGrid: dx must be > 0");
        require(size() >= 3, "PotentialGrid: need at least 3 interior samples");
        require(v.size() == m.size(), "PotentialGrid: v and m must have equal length");
        for (double mi : m) require(mi > 0.0, "PotentialGrid: all masses must be > 0");
    }
};

using ScalarField = std::function<double(double)>;

// Samples potential and mass at the interior nodes of a well of the given
// width.  N = round(width/dx) - 1; dx must divide the width to within half a
// step.
inline PotentialGrid build_grid(double domain_width, double dx,
                                const ScalarField& potential,
                                const ScalarField& mass) {
    require(dx > 0.0, "build_grid: dx must be > 0");
    require(domain_width > 0.0, "build_grid: domain_width must be > 0");
    const double cells = domain_width / dx;
    require(std::abs(cells - std::round(cells)) < 0.5 - 1e-12,
            "build_grid: dx must divide domain_width to within half a step");
    const int n = static_cast<int>(std::round(cells)) - 1;
    require(n >= 3, "build_grid: grid too coarse (fewer than 3 interior samples)");

    PotentialGrid g;
    g.x0 = dx;
    g.dx = dx;
    g.v.resize(n);
    g.m.resize(n);
    for (int i = 0; i < n; ++i) {
        const double xi = g.x(i);
        g.v[i] = potential(xi);
        g.m[i] = mass(xi);
    }
    g.validate();
    return g;
}

inline ScalarField constant_field(double value) {
    return [value](double) { return value; };
}

namespace detail {

// Piecewise-constant sampler over [offset, offset + total width], outside value
// for the exterior.  A node inside a piece takes that piece's value; a node
// exactly on an interface takes the mean of the two sides, which keeps the
// sampled profile mirror-symmetric whenever the geometry is (the half-open
// alternative biases every interface one cell to the left and detunes
// degenerate doublets).
struct PiecewiseSampler {
    std::vector<double> edges;   // ascending, size k+1
    std::vector<double> values;  // size k
    double outside;

    double operator()(double x) const {
        constexpr double tol = 1e-9;  // nm
        if (x < edges.front() - tol || x > edges.back() + tol) return outside;
        for (std::size_t j = 0; j < edges.size(); ++j) {
            if (std::abs(x - edges[j]) < tol) {
                const double left = (j == 0) ? outside : values[j - 1];
                const double right = (j == edges.size() - 1) ? outside : values[j];
                return 0.5 * (left + right);
            }
        }
        for (std::size_t j = 0; j + 1 < edges.size(); ++j)
            if (x > edges[j] && x < edges[j + 1]) return values[j];
        return outside;
    }
};

inline PiecewiseSampler make_sampler(const LayeredStructure& s, double offset,
                                     bool masses) {
    PiecewiseSampler ps;
    ps.outside = masses ? s.lead_mass_ratio : s.lead_potential;
    ps.edges.push_back(offset);
    for (const auto& l : s.layers) {
        ps.values.push_back(masses ? l.mass_ratio : l.height);
        ps.edges.push_back(ps.edges.back() + l.width);
    }
    return ps;
}

}  // namespace detail

// Potential / mass samplers for a LayeredStructure placed at `offset` inside
// the well (exterior at the lead values).
inline ScalarField placed_potential(const LayeredStructure& s, double offset) {
    s.validate();
    return detail::make_sampler(s, offset, false);
}

inline ScalarField placed_mass(const LayeredStructure& s, double offset) {
    s.validate();
    return detail::make_sampler(s, offset, true);
}

// Layer interface positions of a placed structure, clipped into [0, W]; used
// for per-region probability reports.
inline std::vector<double> region_edges(const LayeredStructure& s, double offset,
                                        double domain_width) {
    std::vector<double> e;
    e.push_back(0.0);
    double x = offset;
    for (const auto& l : s.layers) {
        if (x > 0.0 && x < domain_width) e.push_back(x);
        x += l.width;
    }
    if (x > 0.0 && x < domain_width) e.push_back(x);
    e.push_back(domain_width);
    return e;
}

}  // namespace qwell1d
