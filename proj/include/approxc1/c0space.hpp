#pragma once

#include "approxc1/function_space.hpp"

#include <memory>

namespace approxc1 {

/// Conforming C0 space: tensor B-splines of every patch with the first rows
/// along each interface identified.
DiscreteSpace build_c0_space(std::shared_ptr<const Topology> topo, int p, int r, int n);

/// Boundary dofs of the C0 space: first row along every boundary edge, first
/// two rows along Neumann-type edges.
DiscreteSpace c0_homogeneous_subspace(const DiscreteSpace& space, const BcSpec& bc);

} // namespace approxc1
