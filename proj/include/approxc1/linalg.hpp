#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace approxc1 {

using SparseMatrix = Eigen::SparseMatrix<double>;
using DenseMatrix = Eigen::MatrixXd;

struct SolveInfo {
    double residual = 0.0;
    bool used_cg = false;
    int cg_iterations = 0;
};

/// Sparse Cholesky; on a non-positive pivot falls back to Jacobi-preconditioned
/// CG (tol 1e-12, at most 50 * dim iterations). Throws IndefiniteError when CG
/// meets non-positive curvature or stagnates.
Eigen::VectorXd solve_spd(const SparseMatrix& k, const Eigen::VectorXd& b, SolveInfo* info = nullptr);

/// Jacobi-preconditioned CG on its own (used by the fallback and by tests).
Eigen::VectorXd solve_pcg(const SparseMatrix& k, const Eigen::VectorXd& b, double tol, int max_iter,
                          int* iterations = nullptr);

enum class Extreme { Max, Min };
enum class EigenMethod { Auto, Dense, Power };

struct EigenResult {
    double value = 0.0;
    Eigen::VectorXd vector;
    double residual = 0.0;
    int iterations = 0;
};

/// Extreme eigenpair of A x = lambda (B + eps I) x, eps = 1e-12 trace(B)/dim.
/// An empty B means the identity (eps = 0). Auto uses a dense generalized
/// solver up to kDenseEigenLimit unknowns and power iteration beyond.
EigenResult eigen_extreme(const SparseMatrix& a, const SparseMatrix& b, Extreme which,
                          EigenMethod method = EigenMethod::Auto);

inline constexpr int kDenseEigenLimit = 2500;
inline constexpr int kPowerMaxIterations = 10000;

/// Orthonormal basis of {v : |M v| <= rel_tol * sigma_max |v|}.
DenseMatrix nullspace(const DenseMatrix& m, double rel_tol);

/// Right singular vectors split into the numerical kernel and its orthogonal
/// complement.
struct SplitBasis {
    DenseMatrix kernel;
    DenseMatrix complement;
};
SplitBasis kernel_split(const DenseMatrix& m, double rel_tol);

} // namespace approxc1
