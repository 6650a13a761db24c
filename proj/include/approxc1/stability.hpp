#pragma once

#include "approxc1/assembly.hpp"
#include "approxc1/topology.hpp"

#include <vector>

namespace approxc1 {

/// c(h) for interface `iface`: the largest generalized eigenvalue of
/// (avg Delta, avg Delta)_I against the broken Laplacian Gram matrix of the
/// two adjacent patches, both discretized with S(p, r, n)^2 and no boundary
/// conditions.
double estimate_stability_constant(const Topology& topo, int iface, int p, int r, int n,
                                   const AssemblyOptions& opts = {});

/// Per-interface eta = mult * c(h0) / h0 with h0 = 1 / n0.
std::vector<double> stability_parameters(const Topology& topo, int p, int r, int n0, double mult,
                                         const AssemblyOptions& opts = {});

} // namespace approxc1
