#include "approxc1/c1space.hpp"

#include "approxc1/c0space.hpp"
#include "approxc1/error.hpp"
#include "approxc1/linalg.hpp"
#include "approxc1/quadrature.hpp"

#include <Eigen/LU>

#include <map>
#include <string>

namespace approxc1 {

std::vector<std::pair<int, int>> interior_indices(int p, int r, int n)
{
    const int dim = SplineSpace(p, r, n).dim();
    std::vector<std::pair<int, int>> out;
    for (int i2 = 2; i2 <= dim - 3; ++i2)
        for (int i1 = 2; i1 <= dim - 3; ++i1)
            out.emplace_back(i1, i2);
    return out;
}

EdgeIndices edge_indices(int p, int n)
{
    EdgeIndices e;
    const int np = SplineSpace(p, p - 1, n).dim();
    const int nm = SplineSpace(p - 1, p - 2, n).dim();
    for (int j = 3; j <= np - 4; ++j)
        e.plus.push_back(j);
    for (int j = 2; j <= nm - 3; ++j)
        e.minus.push_back(j);
    return e;
}

namespace {

// Index counted from the end of the range that touches the corner.
int corner_local(int k, bool at_start, int dim)
{
    return at_start ? k : dim - 1 - k;
}

} // namespace

Eigen::Matrix<double, Eigen::Dynamic, 6> vertex_functions(const PatchAtoms& pa, int corner, std::vector<int>& atom_ids)
{
    const Vec2 uv = corner_uv(corner);
    const GeometryJet geo = eval_geometry(pa.geometry(), uv[0], uv[1]);
    const int nt = pa.space().space_u().dim();
    const bool u0 = uv[0] == 0.0;
    const bool v0 = uv[1] == 0.0;

    auto jet_column = [&](int atom) {
        const PhysicalJet pj = physical_jet(geo, pa.eval_atom(atom, uv[0], uv[1]));
        const auto a = pj.as_array();
        return Eigen::Matrix<double, 6, 1>(a.data());
    };
    auto tensor = [&](int ku, int kv) { return pa.tensor_atom(corner_local(ku, u0, nt), corner_local(kv, v0, nt)); };

    std::vector<std::pair<std::vector<int>, double>> sets;
    for (int side : corner_sides(corner)) {
        const auto& e = pa.edge(side);
        if (!e)
            throw ParameterError("vertex_functions: side without edge functions");
        const bool at_start = e->map.corner_t(corner) == 0.0;
        std::vector<int> atoms;
        for (int k = 0; k < 3; ++k)
            atoms.push_back(pa.plus_atom(side, corner_local(k, at_start, e->plus.dim())));
        for (int k = 0; k < 2; ++k)
            atoms.push_back(pa.minus_atom(side, corner_local(k, at_start, e->minus.dim())));
        // Tensor function with transversal index 3 and tangential index 1.
        atoms.push_back(e->map.tangential_dir() == 0 ? tensor(0, 2) : tensor(2, 0));
        sets.emplace_back(std::move(atoms), 1.0);
    }
    sets.push_back({{tensor(0, 0), tensor(1, 0), tensor(0, 1), tensor(2, 0), tensor(1, 1), tensor(0, 2)}, -1.0});

    std::map<int, int> row_of;
    atom_ids.clear();
    for (const auto& [atoms, sign] : sets)
        for (int a : atoms)
            if (row_of.emplace(a, static_cast<int>(atom_ids.size())).second)
                atom_ids.push_back(a);

    Eigen::Matrix<double, Eigen::Dynamic, 6> coefs = Eigen::Matrix<double, Eigen::Dynamic, 6>::Zero(atom_ids.size(), 6);
    for (const auto& [atoms, sign] : sets) {
        Eigen::Matrix<double, 6, 6> m;
        for (int c = 0; c < 6; ++c)
            m.col(c) = jet_column(atoms[c]);
        Eigen::PartialPivLU<Eigen::Matrix<double, 6, 6>> lu(m);
        if (!(lu.rcond() > 1e-14))
            throw DegenerateVertexError("singular vertex interpolation at corner " + std::to_string(corner));
        const Eigen::Matrix<double, 6, 6> inv = lu.inverse();
        for (int c = 0; c < 6; ++c)
            coefs.row(row_of[atoms[c]]) += sign * inv.row(c);
    }
    return coefs;
}

DiscreteSpace build_approx_c1_space(std::shared_ptr<const Topology> topo, int p, int r, int n)
{
    if (p < 2 || r < 1 || r > p - 1)
        throw ParameterError("approx C1 space needs p >= 2 and 1 <= r <= p-1");
    if (n < 2 || p + n < 6)
        throw ParameterError("approx C1 space: mesh too coarse for separated vertex functions (need p + n >= 6)");
    DiscreteSpace space;
    space.method = Method::ApproxC1;
    space.p = p, space.r = r, space.n = n;
    space.topology = topo;

    const SplineSpace glue_space(p - 1, p - 2, n);
    const SplineSpace plus(p, p - 1, n);
    const SplineSpace minus(p - 1, p - 2, n);
    std::vector<ApproxGluingData> glue;
    for (int i = 0; i < static_cast<int>(topo->interfaces.size()); ++i)
        glue.push_back(approximate_gluing_data(*topo, i, glue_space));

    const int np = static_cast<int>(topo->patches.size());
    space.atom_offset.resize(np);
    for (int k = 0; k < np; ++k) {
        std::array<std::optional<EdgeBasis>, 4> edges;
        for (int s = 1; s <= 4; ++s) {
            const SideRef& ref = topo->side(k, s);
            EdgeBasis e;
            e.map = topo->side_map(k, s);
            if (ref.interface >= 0)
                e.gluing = ref.l_side ? glue[ref.interface].l : glue[ref.interface].k;
            else
                e.gluing = artificial_gluing(glue_space);
            e.plus = plus;
            e.minus = minus;
            edges[s - 1] = std::move(e);
        }
        space.patches.emplace_back(topo->patches[k], p, r, n, std::move(edges));
        space.atom_offset[k] = space.atom_count;
        space.atom_count += space.patches.back().size();
    }

    std::vector<Eigen::Triplet<double>> trip;
    auto add_dof = [&](DofInfo info) {
        space.dofs.push_back(info);
        return space.size() - 1;
    };

    for (int k = 0; k < np; ++k)
        for (auto [i1, i2] : interior_indices(p, r, n)) {
            const int d = add_dof({DofKind::Interior, k});
            trip.emplace_back(space.atom_offset[k] + space.patches[k].tensor_atom(i1, i2), d, 1.0);
        }

    const EdgeIndices ei = edge_indices(p, n);
    for (int i = 0; i < static_cast<int>(topo->interfaces.size()); ++i) {
        const Interface& f = topo->interfaces[i];
        const int ok = space.atom_offset[f.k], ol = space.atom_offset[f.l];
        const PatchAtoms &pk = space.patches[f.k], &pl = space.patches[f.l];
        for (int j : ei.plus) {
            const int d = add_dof({DofKind::Interface, i, true});
            trip.emplace_back(ok + pk.plus_atom(f.side_k, j), d, 1.0);
            trip.emplace_back(ol + pl.plus_atom(f.side_l, j), d, 1.0);
        }
        // The approximate normal derivatives point in opposite directions.
        for (int j : ei.minus) {
            const int d = add_dof({DofKind::Interface, i, false});
            trip.emplace_back(ok + pk.minus_atom(f.side_k, j), d, 1.0);
            trip.emplace_back(ol + pl.minus_atom(f.side_l, j), d, -1.0);
        }
    }
    for (int b = 0; b < static_cast<int>(topo->boundary_edges.size()); ++b) {
        const BoundaryEdge& be = topo->boundary_edges[b];
        const int o = space.atom_offset[be.patch];
        for (int j : ei.plus) {
            const int d = add_dof({DofKind::BoundaryEdge, b, true});
            trip.emplace_back(o + space.patches[be.patch].plus_atom(be.side, j), d, 1.0);
        }
        for (int j : ei.minus) {
            const int d = add_dof({DofKind::BoundaryEdge, b, false});
            trip.emplace_back(o + space.patches[be.patch].minus_atom(be.side, j), d, 1.0);
        }
    }

    for (int v = 0; v < static_cast<int>(topo->vertices.size()); ++v) {
        int first = space.size();
        for (int m = 0; m < 6; ++m)
            add_dof({DofKind::Vertex, v});
        for (auto [k, c] : topo->vertices[v].incident) {
            std::vector<int> ids;
            const auto coefs = vertex_functions(space.patches[k], c, ids);
            for (std::size_t a = 0; a < ids.size(); ++a)
                for (int m = 0; m < 6; ++m)
                    if (coefs(a, m) != 0.0)
                        trip.emplace_back(space.atom_offset[k] + ids[a], first + m, coefs(a, m));
        }
    }

    space.coupling.resize(space.atom_count, space.size());
    space.coupling.setFromTriplets(trip.begin(), trip.end());
    return space;
}

namespace {

// Parameters near a corner (t = 0 or 1) covering the support of the vertex
// functions along the edge: the corner and Gauss points of three elements.
std::vector<double> corner_samples(double t_corner, int p, int n)
{
    std::vector<double> ts{0.0};
    const int elems = std::min(3, n);
    for (int e = 0; e < elems; ++e) {
        const auto r = gauss_legendre(p + 1, static_cast<double>(e) / n, static_cast<double>(e + 1) / n);
        ts.insert(ts.end(), r.nodes.begin(), r.nodes.end());
    }
    if (t_corner == 1.0)
        for (auto& t : ts)
            t = 1.0 - t;
    return ts;
}

} // namespace

DiscreteSpace homogeneous_subspace(const DiscreteSpace& space, const BcSpec& bc)
{
    if (space.method == Method::Nitsche)
        return c0_homogeneous_subspace(space, bc);
    const Topology& topo = *space.topology;
    if (bc.size() != topo.boundary_edges.size())
        throw ParameterError("homogeneous_subspace: one tag per boundary edge expected");

    DiscreteSpace out = space;
    out.dofs.clear();
    std::vector<Eigen::Triplet<double>> trip;
    const int nd = space.size();
    int d = 0;
    while (d < nd) {
        const DofInfo info = space.dofs[d];
        if (info.kind == DofKind::BoundaryEdge) {
            DofInfo ni = info;
            ni.boundary = bc[info.owner] == BcType::Neumann || info.trace;
            trip.emplace_back(d, out.size(), 1.0);
            out.dofs.push_back(ni);
            ++d;
            continue;
        }
        if (info.kind != DofKind::Vertex || !topo.vertices[info.owner].on_boundary()) {
            trip.emplace_back(d, out.size(), 1.0);
            out.dofs.push_back(info);
            ++d;
            continue;
        }

        // Boundary vertex: six consecutive dofs.
        const int v = info.owner;
        std::vector<std::array<double, 6>> rows;
        for (auto [k, c] : topo.vertices[v].incident) {
            const Patch& geo = topo.patches[k];
            for (int s : corner_sides(c)) {
                const SideRef& ref = topo.side(k, s);
                if (ref.boundary < 0)
                    continue;
                const bool neumann = bc[ref.boundary] == BcType::Neumann;
                const CanonicalMap map = topo.side_map(k, s);
                for (double t : corner_samples(map.corner_t(c), space.p, space.n)) {
                    const Vec2 uv = map.to_uv(0.0, t);
                    const GeometryJet gj = eval_geometry(geo, uv[0], uv[1]);
                    const Vec2 normal = edge_frame(geo, map, t).normal;
                    std::array<double, 6> val{}, dn{};
                    for (int m = 0; m < 6; ++m) {
                        Eigen::VectorXd col = Eigen::VectorXd::Zero(space.size());
                        col[d + m] = 1.0;
                        const Eigen::VectorXd atoms = space.coupling * col;
                        const PhysicalJet pj = physical_jet(gj, eval_patch_function(space, atoms, k, uv[0], uv[1]));
                        val[m] = pj.value;
                        dn[m] = space.h() * pj.grad.dot(normal);
                    }
                    rows.push_back(val);
                    if (neumann)
                        rows.push_back(dn);
                }
            }
        }
        Eigen::MatrixXd m(rows.size(), 6);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (int j = 0; j < 6; ++j)
                m(i, j) = rows[i][j];
        // Jet dofs scale like h^order; a per-column norm would blow up
        // roundoff-sized columns of functions that do vanish on the boundary.
        const double h = space.h();
        Eigen::VectorXd scale(6);
        scale << 1.0, h, h, h * h, h * h, h * h;
        for (int j = 0; j < 6; ++j)
            m.col(j) /= scale[j];
        const SplitBasis split = kernel_split(m, kVertexKernelTol);
        auto push = [&](const Eigen::VectorXd& vec, bool boundary) {
            const int col = out.size();
            for (int j = 0; j < 6; ++j)
                if (vec[j] != 0.0)
                    trip.emplace_back(d + j, col, vec[j] / scale[j]);
            out.dofs.push_back({DofKind::Vertex, v, false, boundary});
        };
        for (int j = 0; j < split.kernel.cols(); ++j)
            push(split.kernel.col(j), false);
        for (int j = 0; j < split.complement.cols(); ++j)
            push(split.complement.col(j), true);
        d += 6;
    }
    Eigen::SparseMatrix<double> t(nd, out.size());
    t.setFromTriplets(trip.begin(), trip.end());
    out.coupling = (space.coupling * t).pruned();
    return out;
}

} // namespace approxc1
