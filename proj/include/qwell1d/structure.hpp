#pragma once

#include <numeric>
#include <vector>

#include "qwell1d/constants.hpp"

namespace qwell1d {

// One constant-potential slab of a scattering stack.
struct Layer {
    double width;        // nm, > 0
    double height;       // eV, any sign
    double mass_ratio;   // m/m_e, > 0

    void validate() const {
        require(width > 0.0, "Layer: width must be > 0");
        require(mass_ratio > 0.0, "Layer: mass_ratio must be > 0");
    }
};

// Ordered stack of layers between two semi-infinite leads.  x = 0 is the left
// edge of the first layer; incidence is from the left lead.
struct LayeredStructure {
    std::vector<Layer> layers;
    double lead_potential = 0.0;   // eV, both leads
    double lead_mass_ratio = 0.067;

    void validate() const {
        require(!layers.empty(), "LayeredStructure: at least one layer required");
        require(lead_mass_ratio > 0.0, "LayeredStructure: lead_mass_ratio must be > 0");
        for (const auto& l : layers) l.validate();
        require(total_width() > 0.0, "LayeredStructure: total width must be > 0");
    }

    double total_width() const {
        double w = 0.0;
        for (const auto& l : layers) w += l.width;
        return w;
    }

    LayeredStructure reversed() const {
        LayeredStructure s = *this;
        std::reverse(s.layers.begin(), s.layers.end());
        return s;
    }
};

// Canonical stacks used throughout: barrier | well | barrier ... with wells at
// the lead potential.
inline LayeredStructure make_single_barrier(double v0, double a, double mass) {
    return {{{a, v0, mass}}, 0.0, mass};
}

inline LayeredStructure make_sqw_db(double v_left, double a, double well,
                                    double v_right, double b, double mass) {
    LayeredStructure s{{}, 0.0, mass};
    s.layers.push_back({a, v_left, mass});
    if (well > 0.0) s.layers.push_back({well, 0.0, mass});
    if (b > 0.0) s.layers.push_back({b, v_right, mass});
    return s;
}

inline LayeredStructure make_dqwtb(double v1, double a, double l1, double v2,
                                   double b, double l2, double mass) {
    LayeredStructure s{{}, 0.0, mass};
    s.layers.push_back({a, v1, mass});
    if (l1 > 0.0) s.layers.push_back({l1, 0.0, mass});
    if (b > 0.0) s.layers.push_back({b, v2, mass});
    if (l2 > 0.0) s.layers.push_back({l2, 0.0, mass});
    s.layers.push_back({a, v1, mass});
    return s;
}

}  // namespace qwell1d
