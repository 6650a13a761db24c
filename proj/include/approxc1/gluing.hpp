#pragma once

#include "approxc1/topology.hpp"

#include <array>

namespace approxc1 {

/// Spline approximations of alpha and beta along one side of an edge.
struct SideGluing {
    SplineSpace space;
    CoefficientVector alpha;
    CoefficientVector beta;
    bool artificial = false;

    /// alpha and beta with their first two derivatives at t.
    void eval(double t, std::array<double, 3>& a, std::array<double, 3>& b) const;
};

struct ApproxGluingData {
    SideGluing k;
    SideGluing l;
};

/// L2 projections of the exact gluing data of a side into `target`.
/// Throws SingularGluingError if the projected alpha is not positive.
SideGluing project_gluing(const Patch& patch, const CanonicalMap& map, const SplineSpace& target);

/// alpha = 1, beta = 0; used on boundary edges.
SideGluing artificial_gluing(const SplineSpace& target);

ApproxGluingData approximate_gluing_data(const Topology& topo, int iface, const SplineSpace& target);

} // namespace approxc1
