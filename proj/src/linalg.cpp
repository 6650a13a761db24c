#include "approxc1/linalg.hpp"

#include "approxc1/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <string>

namespace approxc1 {

Eigen::VectorXd solve_pcg(const SparseMatrix& k, const Eigen::VectorXd& b, double tol, int max_iter, int* iterations)
{
    const int n = static_cast<int>(b.size());
    Eigen::VectorXd inv_diag(n);
    for (int i = 0; i < n; ++i) {
        const double d = k.coeff(i, i);
        if (!(d > 0.0))
            throw IndefiniteError("pcg: non-positive diagonal entry at " + std::to_string(i));
        inv_diag[i] = 1.0 / d;
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        if (iterations)
            *iterations = 0;
        return x;
    }
    Eigen::VectorXd r = b;
    Eigen::VectorXd z = inv_diag.cwiseProduct(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    for (int it = 1; it <= max_iter; ++it) {
        const Eigen::VectorXd kp = k * p;
        const double curv = p.dot(kp);
        if (!(curv > 0.0))
            throw IndefiniteError("pcg: non-positive curvature p^T K p = " + std::to_string(curv));
        const double alpha = rz / curv;
        x += alpha * p;
        r -= alpha * kp;
        if (r.norm() <= tol * bnorm) {
            if (iterations)
                *iterations = it;
            return x;
        }
        z = inv_diag.cwiseProduct(r);
        const double rz_new = r.dot(z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    throw IndefiniteError("pcg: no convergence in " + std::to_string(max_iter) + " iterations");
}

Eigen::VectorXd solve_spd(const SparseMatrix& k, const Eigen::VectorXd& b, SolveInfo* info)
{
    if (k.rows() != k.cols() || k.rows() != b.size())
        throw ParameterError("solve_spd: dimension mismatch");
    SolveInfo local;
    Eigen::VectorXd x;
    Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> llt(k);
    if (llt.info() == Eigen::Success) {
        x = llt.solve(b);
        // One step of iterative refinement.
        const Eigen::VectorXd r = b - k * x;
        x += llt.solve(r);
    } else {
        local.used_cg = true;
        x = solve_pcg(k, b, 1e-12, 50 * static_cast<int>(b.size()), &local.cg_iterations);
    }
    const double bnorm = b.norm();
    local.residual = bnorm > 0.0 ? (b - k * x).norm() / bnorm : (k * x).norm();
    if (!std::isfinite(local.residual))
        throw NumericalError("solve_spd: non-finite solution");
    if (info)
        *info = local;
    return x;
}

namespace {

double regularization(const SparseMatrix& b)
{
    if (b.size() == 0)
        return 0.0;
    double tr = 0.0;
    for (int i = 0; i < b.rows(); ++i)
        tr += b.coeff(i, i);
    return 1e-12 * tr / b.rows();
}

SparseMatrix regularized(const SparseMatrix& b, int n, double eps)
{
    SparseMatrix id(n, n);
    id.setIdentity();
    if (b.size() == 0)
        return id;
    return b + eps * id;
}

EigenResult dense_extreme(const SparseMatrix& a, const SparseMatrix& breg, Extreme which)
{
    const DenseMatrix ad = DenseMatrix(a);
    const DenseMatrix bd = DenseMatrix(breg);
    Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> es(ad, bd, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (es.info() != Eigen::Success)
        throw NumericalError("eigen_extreme: dense generalized eigensolver failed");
    const int idx = which == Extreme::Max ? static_cast<int>(ad.rows()) - 1 : 0;
    EigenResult r;
    r.value = es.eigenvalues()[idx];
    r.vector = es.eigenvectors().col(idx);
    return r;
}

EigenResult power_extreme(const SparseMatrix& a, const SparseMatrix& breg, Extreme which, double shift)
{
    const int n = static_cast<int>(a.rows());
    Eigen::SimplicialLLT<SparseMatrix> llt(breg);
    if (llt.info() != Eigen::Success)
        throw NumericalError("eigen_extreme: regularized B is not positive definite");
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i)
        x[i] = 1.0 + 0.1 * std::sin(1.0 + i);
    auto bnorm = [&](const Eigen::VectorXd& v) { return std::sqrt(v.dot(breg * v)); };
    x /= bnorm(x);
    EigenResult r;
    for (int it = 1; it <= kPowerMaxIterations; ++it) {
        const Eigen::VectorXd ax = a * x;
        const double lambda = x.dot(ax) / x.dot(breg * x);
        const double res = (ax - lambda * (breg * x)).norm();
        const double scale = ax.norm();
        if (it > 1 && res <= 1e-8 * std::max(scale, 1e-300)) {
            r.value = lambda;
            r.vector = x;
            r.iterations = it;
            return r;
        }
        Eigen::VectorXd y = llt.solve(ax);
        if (which == Extreme::Min)
            y = shift * x - y;
        const double nrm = bnorm(y);
        if (!(nrm > 0.0))
            throw NumericalError("eigen_extreme: power iteration collapsed");
        x = y / nrm;
    }
    throw NumericalError("eigen_extreme: power iteration did not converge in " + std::to_string(kPowerMaxIterations) +
                         " steps");
}

} // namespace

EigenResult eigen_extreme(const SparseMatrix& a, const SparseMatrix& b, Extreme which, EigenMethod method)
{
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n || (b.size() != 0 && (b.rows() != n || b.cols() != n)))
        throw ParameterError("eigen_extreme: dimension mismatch");
    const double eps = regularization(b);
    const SparseMatrix breg = regularized(b, n, eps);
    if (method == EigenMethod::Auto)
        method = n <= kDenseEigenLimit ? EigenMethod::Dense : EigenMethod::Power;

    EigenResult r;
    if (method == EigenMethod::Dense) {
        r = dense_extreme(a, breg, which);
    } else if (which == Extreme::Max) {
        r = power_extreme(a, breg, Extreme::Max, 0.0);
    } else {
        const EigenResult top = power_extreme(a, breg, Extreme::Max, 0.0);
        r = power_extreme(a, breg, Extreme::Min, top.value);
    }
    const Eigen::VectorXd av = a * r.vector;
    const double scale = av.norm();
    r.residual = (av - r.value * (breg * r.vector)).norm() / (scale > 0.0 ? scale : 1.0);
    return r;
}

SplitBasis kernel_split(const DenseMatrix& m, double rel_tol)
{
    const int cols = static_cast<int>(m.cols());
    Eigen::JacobiSVD<DenseMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv[0] : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (smax > 0.0 && sv[i] > rel_tol * smax)
            ++rank;
    SplitBasis s;
    s.complement = svd.matrixV().leftCols(rank);
    s.kernel = svd.matrixV().rightCols(cols - rank);
    return s;
}

DenseMatrix nullspace(const DenseMatrix& m, double rel_tol)
{
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw ParameterError("nullspace: rel_tol must lie in (0,1)");
    return kernel_split(m, rel_tol).kernel;
}

} // namespace approxc1
