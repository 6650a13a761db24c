#include "approxc1/topology.hpp"

#include "approxc1/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>
#include <string>

namespace approxc1 {

namespace {

bool same_points(const std::vector<Vec2>& a, const std::vector<Vec2>& b, bool reversed, double tol)
{
    if (a.size() != b.size())
        return false;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        if ((a[i] - b[reversed ? n - 1 - i : i]).norm() > tol)
            return false;
    return true;
}

const KnotVector& side_knots(const Patch& p, int side)
{
    return (side == 1 || side == 3) ? p.space().space_u().knot_vector() : p.space().space_v().knot_vector();
}

bool same_knots(const KnotVector& a, const KnotVector& b, bool reversed)
{
    if (a.degree() != b.degree() || a.knots().size() != b.knots().size())
        return false;
    const std::size_t n = a.knots().size();
    for (std::size_t i = 0; i < n; ++i) {
        const double kb = reversed ? 1.0 - b.knots()[n - 1 - i] : b.knots()[i];
        if (std::abs(a.knots()[i] - kb) > 1e-14)
            return false;
    }
    return true;
}

Vec2 side_point(const Patch& p, int side, double t)
{
    const Vec2 uv = CanonicalMap{side, false}.to_uv(0.0, t);
    const BasisTable tu = p.space().space_u().eval_basis(uv[0], 2);
    const BasisTable tv = p.space().space_v().eval_basis(uv[1], 2);
    return geometry_jet(p, tu, tv).x;
}

// Distance from x to the curve of a side, by sampling plus bisection-style
// refinement of the nearest sample.
std::pair<double, double> distance_to_side(const Patch& p, int side, const Vec2& x)
{
    constexpr int samples = 64;
    double best = std::numeric_limits<double>::infinity();
    double best_t = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double t = static_cast<double>(i) / samples;
        const double d = (side_point(p, side, t) - x).norm();
        if (d < best)
            best = d, best_t = t;
    }
    double step = 1.0 / samples;
    for (int it = 0; it < 40; ++it) {
        step *= 0.5;
        for (double cand : {best_t - step, best_t + step}) {
            if (cand < 0.0 || cand > 1.0)
                continue;
            const double d = (side_point(p, side, cand) - x).norm();
            if (d < best)
                best = d, best_t = cand;
        }
    }
    return {best, best_t};
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
    void unite(int a, int b)
    {
        a = find(a), b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

CanonicalMap Topology::side_map(int patch, int s) const
{
    const SideRef& ref = side(patch, s);
    if (ref.interface >= 0 && ref.l_side)
        return interfaces[ref.interface].map_l();
    return {s, false};
}

Topology detect_topology(std::vector<Patch> patches, double tol)
{
    if (patches.empty())
        throw ParameterError("detect_topology: no patches");
    Topology topo;
    topo.tolerance = tol > 0.0 ? tol : 1e-9 * bbox_diagonal(patches);
    tol = topo.tolerance;
    topo.patches = std::move(patches);
    const int np = static_cast<int>(topo.patches.size());
    topo.sides.assign(np, {});

    std::vector<std::array<std::vector<Vec2>, 4>> ctrl(np);
    for (int k = 0; k < np; ++k)
        for (int s = 1; s <= 4; ++s)
            ctrl[k][s - 1] = topo.patches[k].side_control(s);

    // Each edge must match at most one other edge.
    for (int k = 0; k < np; ++k) {
        for (int sk = 1; sk <= 4; ++sk) {
            const auto& a = ctrl[k][sk - 1];
            int matches = 0;
            for (int l = 0; l < np; ++l) {
                for (int sl = 1; sl <= 4; ++sl) {
                    if (l == k && sl == sk)
                        continue;
                    const auto& b = ctrl[l][sl - 1];
                    const bool fwd = same_points(a, b, false, tol);
                    const bool rev = !fwd && same_points(a, b, true, tol);
                    if (!fwd && !rev)
                        continue;
                    if (l == k)
                        throw NonManifoldError("patch " + std::to_string(k) + " is glued to itself");
                    if (!same_knots(side_knots(topo.patches[k], sk), side_knots(topo.patches[l], sl), rev))
                        throw ConformityError("patches " + std::to_string(k) + " and " + std::to_string(l) +
                                              " share an edge with different knot vectors");
                    ++matches;
                    if (k < l) {
                        Interface iface{k, l, sk, sl, rev};
                        topo.interfaces.push_back(iface);
                    }
                }
            }
            if (matches > 1)
                throw NonManifoldError("edge " + std::to_string(sk) + " of patch " + std::to_string(k) +
                                       " matches more than one other edge");
        }
    }
    std::sort(topo.interfaces.begin(), topo.interfaces.end(), [](const Interface& a, const Interface& b) {
        return std::tie(a.k, a.side_k) < std::tie(b.k, b.side_k);
    });
    for (int i = 0; i < static_cast<int>(topo.interfaces.size()); ++i) {
        const auto& f = topo.interfaces[i];
        topo.sides[f.k][f.side_k - 1] = {i, -1, false};
        topo.sides[f.l][f.side_l - 1] = {i, -1, true};
    }
    for (int k = 0; k < np; ++k)
        for (int s = 1; s <= 4; ++s)
            if (topo.sides[k][s - 1].interface < 0) {
                topo.sides[k][s - 1].boundary = static_cast<int>(topo.boundary_edges.size());
                topo.boundary_edges.push_back({k, s});
            }

    // Unmatched edges must not overlap other unmatched edges (hanging nodes,
    // mismatched control polygons).
    const double overlap_tol = std::max(tol, 1e-7 * bbox_diagonal(topo.patches));
    for (const auto& a : topo.boundary_edges) {
        for (const auto& b : topo.boundary_edges) {
            if (a.patch == b.patch)
                continue;
            const auto& ca = ctrl[a.patch][a.side - 1];
            const auto& cb = ctrl[b.patch][b.side - 1];
            const bool ends_fwd = (ca.front() - cb.front()).norm() <= tol && (ca.back() - cb.back()).norm() <= tol;
            const bool ends_rev = (ca.front() - cb.back()).norm() <= tol && (ca.back() - cb.front()).norm() <= tol;
            if (ends_fwd || ends_rev)
                throw ConformityError("edge " + std::to_string(a.side) + " of patch " + std::to_string(a.patch) +
                                      " and edge " + std::to_string(b.side) + " of patch " + std::to_string(b.patch) +
                                      " share end points but not their control points");
            for (double t : {0.25, 0.5, 0.75}) {
                const Vec2 x = side_point(topo.patches[a.patch], a.side, t);
                const auto [d, tb] = distance_to_side(topo.patches[b.patch], b.side, x);
                if (d <= overlap_tol)
                    throw ConformityError("edge " + std::to_string(a.side) + " of patch " + std::to_string(a.patch) +
                                          " partially overlaps edge " + std::to_string(b.side) + " of patch " +
                                          std::to_string(b.patch));
            }
        }
    }

    // Vertices.
    std::vector<Vec2> corner_pos(4 * np);
    for (int k = 0; k < np; ++k) {
        const Patch& p = topo.patches[k];
        corner_pos[4 * k + 0] = p.control(0, 0);
        corner_pos[4 * k + 1] = p.control(p.size_u() - 1, 0);
        corner_pos[4 * k + 2] = p.control(p.size_u() - 1, p.size_v() - 1);
        corner_pos[4 * k + 3] = p.control(0, p.size_v() - 1);
    }
    UnionFind uf(4 * np);
    for (int i = 0; i < 4 * np; ++i)
        for (int j = i + 1; j < 4 * np; ++j)
            if ((corner_pos[i] - corner_pos[j]).norm() <= tol)
                uf.unite(i, j);
    topo.corner_vertex.assign(np, {-1, -1, -1, -1});
    std::vector<int> root_to_vertex(4 * np, -1);
    for (int i = 0; i < 4 * np; ++i) {
        const int root = uf.find(i);
        if (root_to_vertex[root] < 0) {
            root_to_vertex[root] = static_cast<int>(topo.vertices.size());
            topo.vertices.push_back({});
            topo.vertices.back().position = corner_pos[root];
        }
        const int vi = root_to_vertex[root];
        topo.vertices[vi].incident.emplace_back(i / 4, i % 4 + 1);
        topo.corner_vertex[i / 4][i % 4] = vi;
    }
    for (auto& v : topo.vertices) {
        bool boundary = false;
        for (auto [k, c] : v.incident)
            for (int s : corner_sides(c))
                boundary = boundary || topo.side(k, s).boundary >= 0;
        if (!boundary)
            v.kind = VertexKind::Inner;
        else
            v.kind = v.valence() == 1 ? VertexKind::Corner : VertexKind::InterfaceBoundary;
    }
    return topo;
}

std::pair<double, double> gluing_data(const Topology& topo, int iface, bool l_side, double t)
{
    const Interface& f = topo.interfaces.at(iface);
    const EdgeFrame fr =
        l_side ? edge_frame(topo.patches[f.l], f.map_l(), t) : edge_frame(topo.patches[f.k], f.map_k(), t);
    return {fr.alpha, fr.beta};
}

} // namespace approxc1
