#pragma once

#include "approxc1/geometry.hpp"

#include <utility>
#include <vector>

namespace approxc1 {

/// Shared edge between patches k < l. The edge parameter of both sides runs
/// in the natural direction of side_k; `reversed` says whether it runs
/// against the natural direction of side_l.
struct Interface {
    int k = 0;
    int l = 0;
    int side_k = 0;
    int side_l = 0;
    bool reversed = false;

    CanonicalMap map_k() const { return {side_k, false}; }
    CanonicalMap map_l() const { return {side_l, reversed}; }
};

struct BoundaryEdge {
    int patch = 0;
    int side = 0;
};

enum class VertexKind { Corner, InterfaceBoundary, Inner };

struct VertexRecord {
    VertexKind kind = VertexKind::Inner;
    /// (patch, corner) pairs sorted by patch.
    std::vector<std::pair<int, int>> incident;
    Vec2 position;

    int valence() const { return static_cast<int>(incident.size()); }
    bool on_boundary() const { return kind != VertexKind::Inner; }
};

/// What a patch side is glued to.
struct SideRef {
    int interface = -1;
    int boundary = -1;
    bool l_side = false;
};

struct Topology {
    std::vector<Patch> patches;
    std::vector<Interface> interfaces;
    std::vector<BoundaryEdge> boundary_edges;
    std::vector<VertexRecord> vertices;
    double tolerance = 0.0;

    /// Indexed [patch][side - 1].
    std::vector<std::array<SideRef, 4>> sides;
    /// Indexed [patch][corner - 1].
    std::vector<std::array<int, 4>> corner_vertex;

    const SideRef& side(int patch, int s) const { return sides[patch][s - 1]; }
    /// Canonical map of a side, oriented like the k side for interfaces.
    CanonicalMap side_map(int patch, int s) const;
};

/// Matches patch edges by their control points (forward or reversed) and
/// groups corners into vertices. tol <= 0 selects 1e-9 times the bounding box
/// diagonal.
Topology detect_topology(std::vector<Patch> patches, double tol = 0.0);

/// Exact (alpha, beta) of one side of an interface at edge parameter t.
std::pair<double, double> gluing_data(const Topology& topo, int iface, bool l_side, double t);

} // namespace approxc1
