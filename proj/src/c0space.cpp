#include "approxc1/c0space.hpp"

#include "approxc1/error.hpp"

#include <numeric>

namespace approxc1 {

namespace {

// Tensor index of the j-th function (natural direction) in row `row` counted
// inward from a side.
std::pair<int, int> side_row(int side, int row, int j, int dim)
{
    switch (side) {
    case 1:
        return {j, row};
    case 2:
        return {dim - 1 - row, j};
    case 3:
        return {j, dim - 1 - row};
    default:
        return {row, j};
    }
}

int find(std::vector<int>& parent, int i)
{
    while (parent[i] != i)
        i = parent[i] = parent[parent[i]];
    return i;
}

} // namespace

DiscreteSpace build_c0_space(std::shared_ptr<const Topology> topo, int p, int r, int n)
{
    if (p < 1 || r < 0 || r > p - 1 || n < 1)
        throw ParameterError("C0 space: invalid (p, r, n)");
    DiscreteSpace space;
    space.method = Method::Nitsche;
    space.p = p, space.r = r, space.n = n;
    space.topology = topo;
    const int np = static_cast<int>(topo->patches.size());
    space.atom_offset.resize(np);
    for (int k = 0; k < np; ++k) {
        space.patches.emplace_back(topo->patches[k], p, r, n, std::array<std::optional<EdgeBasis>, 4>{});
        space.atom_offset[k] = space.atom_count;
        space.atom_count += space.patches.back().size();
    }

    std::vector<int> parent(space.atom_count);
    std::iota(parent.begin(), parent.end(), 0);
    const int dim = SplineSpace(p, r, n).dim();
    for (const Interface& f : topo->interfaces) {
        for (int j = 0; j < dim; ++j) {
            const auto [a1, a2] = side_row(f.side_k, 0, j, dim);
            const auto [b1, b2] = side_row(f.side_l, 0, f.reversed ? dim - 1 - j : j, dim);
            int a = find(parent, space.atom_offset[f.k] + space.patches[f.k].tensor_atom(a1, a2));
            int b = find(parent, space.atom_offset[f.l] + space.patches[f.l].tensor_atom(b1, b2));
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<int> dof_of_root(space.atom_count, -1);
    std::vector<Eigen::Triplet<double>> trip;
    int patch = 0;
    for (int a = 0; a < space.atom_count; ++a) {
        while (patch + 1 < np && a >= space.atom_offset[patch + 1])
            ++patch;
        const int root = find(parent, a);
        if (dof_of_root[root] < 0) {
            dof_of_root[root] = space.size();
            space.dofs.push_back({DofKind::Tensor, patch});
        }
        trip.emplace_back(a, dof_of_root[root], 1.0);
    }
    space.coupling.resize(space.atom_count, space.size());
    space.coupling.setFromTriplets(trip.begin(), trip.end());
    return space;
}

DiscreteSpace c0_homogeneous_subspace(const DiscreteSpace& space, const BcSpec& bc)
{
    const Topology& topo = *space.topology;
    if (bc.size() != topo.boundary_edges.size())
        throw ParameterError("homogeneous_subspace: one tag per boundary edge expected");
    DiscreteSpace out = space;
    const int dim = SplineSpace(space.p, space.r, space.n).dim();
    using RowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
    const RowMatrix by_atom = space.coupling;
    for (int b = 0; b < static_cast<int>(topo.boundary_edges.size()); ++b) {
        const BoundaryEdge& be = topo.boundary_edges[b];
        const int rows = bc[b] == BcType::Neumann ? 2 : 1;
        for (int row = 0; row < rows; ++row)
            for (int j = 0; j < dim; ++j) {
                const auto [i1, i2] = side_row(be.side, row, j, dim);
                const int atom = space.atom_offset[be.patch] + space.patches[be.patch].tensor_atom(i1, i2);
                for (RowMatrix::InnerIterator it(by_atom, atom); it; ++it)
                    out.dofs[it.index()].boundary = true;
            }
    }
    return out;
}

} // namespace approxc1
