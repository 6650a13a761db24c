#pragma once

#include "approxc1/function_space.hpp"

#include <functional>
#include <vector>

namespace approxc1 {

struct ErrorReport {
    double h = 0.0;
    int dofs = 0;
    double l2 = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    /// L2 norm of the normal-derivative jump, one entry per interface.
    std::vector<double> jumps;
};

using JetFunction = std::function<PhysicalJet(const Vec2&)>;

/// Full L2, H1 and broken H2 norms of u_h - exact; an empty `exact` measures
/// u_h itself. `dofs` holds all dof coefficients.
ErrorReport error_norms(const DiscreteSpace& space, const Eigen::VectorXd& dofs, const JetFunction& exact,
                        int points = 0);

/// ||[d_n u_h]||_{L2(I)} for every interface.
std::vector<double> jump_norms(const DiscreteSpace& space, const Eigen::VectorXd& dofs, int points = 0);

} // namespace approxc1
