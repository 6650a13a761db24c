#pragma once

#include "approxc1/function_space.hpp"
#include "approxc1/linalg.hpp"
#include "approxc1/manufactured.hpp"

#include <functional>
#include <vector>

namespace approxc1 {

struct Problem {
    /// Right-hand side f = bilaplacian of the solution.
    std::function<double(const Vec2&)> f;
    /// Laplacian prescribed on Laplace-type edges; empty means zero.
    std::function<double(const Vec2&)> g2;
    /// Essential data (value and gradient); empty means homogeneous.
    std::function<PhysicalJet(const Vec2&)> essential;
};

/// f, g2 and essential data of an exact solution.
Problem problem_from(const ExactSolution& exact, bool homogeneous);

struct AssemblyOptions {
    /// OpenMP element loop with a fixed chunked merge; false runs the plain
    /// serial reference loop.
    bool parallel = true;
    /// Gauss points per direction and element; 0 means p + 2.
    int volume_points = 0;
    /// Gauss points per edge span; 0 means p + p~ + 2 = 2p + 1.
    int edge_points = 0;
};

struct AssembledSystem {
    Method method = Method::ApproxC1;
    /// All dofs.
    SparseMatrix full;
    Eigen::VectorXd full_load;
    /// Free-dof system after lifting the essential data.
    SparseMatrix stiffness;
    Eigen::VectorXd load;
    std::vector<int> free;
    std::vector<int> boundary;
    Eigen::VectorXd boundary_values;
    std::vector<double> eta;
};

/// Galerkin system of (Delta u, Delta v) = (f, v) + (g2, d_n v)_{Laplace edges};
/// no interface terms.
AssembledSystem assemble_approx_c1(const DiscreteSpace& space, const Problem& problem, const BcSpec& bc,
                                   const AssemblyOptions& opts = {});

/// Symmetric interior penalty form over a C0 space; eta holds one value per
/// interface and the penalty is eta/h.
AssembledSystem assemble_nitsche(const DiscreteSpace& space, const Problem& problem, const BcSpec& bc,
                                 const std::vector<double>& eta, const AssemblyOptions& opts = {});

/// Solves the free-dof system and returns all dof coefficients.
Eigen::VectorXd solve_system(const AssembledSystem& sys, SolveInfo* info = nullptr);

/// Dof-level sum over patches of the integral of Delta(phi_i) Delta(phi_j).
SparseMatrix laplace_matrix(const DiscreteSpace& space, const AssemblyOptions& opts = {});

/// Dof-level interface matrices: jump-jump (normal derivative), jump-average
/// (d_n phi_i jump times average of Delta phi_j) and average-average.
struct InterfaceMatrices {
    SparseMatrix jump_jump;
    SparseMatrix jump_avg;
    SparseMatrix avg_avg;
};
InterfaceMatrices interface_matrices(const DiscreteSpace& space, int iface, const AssemblyOptions& opts = {});

/// Dof-level broken H2 Gram matrix (all derivatives up to order two).
SparseMatrix h2_gram(const DiscreteSpace& space, const AssemblyOptions& opts = {});

/// Submatrix of rows `rows` and columns `cols`.
SparseMatrix submatrix(const SparseMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols);

} // namespace approxc1
