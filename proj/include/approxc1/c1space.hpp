#pragma once

#include "approxc1/function_space.hpp"

#include <memory>

namespace approxc1 {

/// Tensor indices (0-based) of the interior space: 2 <= i1, i2 <= N-3.
std::vector<std::pair<int, int>> interior_indices(int p, int r, int n);

/// Retained edge-function indices: the trace functions of S(p,p-1,h) without
/// the first and last three, the transversal ones of S(p-1,p-2,h) without the
/// first and last two.
struct EdgeIndices {
    std::vector<int> plus;
    std::vector<int> minus;
};
EdgeIndices edge_indices(int p, int n);

/// Approximately C1 space on the whole topology, no boundary conditions.
/// Requires p >= 2, 1 <= r <= p-1 and a mesh fine enough that the vertex
/// functions of the two ends of an edge do not share atoms (n >= 3).
DiscreteSpace build_approx_c1_space(std::shared_ptr<const Topology> topo, int p, int r, int n);

/// Coefficients, over atoms of one patch, of the six local vertex functions
/// at a corner; column m interpolates the m-th unit physical jet
/// (value, x, y, xx, xy, yy).
Eigen::Matrix<double, Eigen::Dynamic, 6> vertex_functions(const PatchAtoms& atoms, int corner,
                                                          std::vector<int>& atom_ids);

/// Splits the space into free and boundary dofs. Boundary edge dofs follow
/// the edge tag (all of them on Neumann-type edges, traces only on
/// Laplace-type ones); at boundary vertices the six dofs are recombined into
/// the numerical kernel of the boundary constraints (free) and its
/// complement (boundary). Dispatches on the method, so it also handles the
/// C0 space used by Nitsche's method.
DiscreteSpace homogeneous_subspace(const DiscreteSpace& space, const BcSpec& bc);

/// Relative singular value threshold used for boundary vertex kernels.
inline constexpr double kVertexKernelTol = 1e-8;

} // namespace approxc1
