#include "approxc1/stability.hpp"

#include "approxc1/c0space.hpp"
#include "approxc1/error.hpp"

#include <Eigen/SparseCholesky>

#include <memory>

namespace approxc1 {

namespace {

// max x'Ax / x'Bx where A only touches the dofs in `active`: minimizing x'Bx
// over the remaining dofs turns B into its Schur complement on `active`.
double reduced_max_eigenvalue(const SparseMatrix& a, const SparseMatrix& b)
{
    const int n = static_cast<int>(a.rows());
    std::vector<char> touched(n, 0);
    for (int j = 0; j < a.outerSize(); ++j)
        for (SparseMatrix::InnerIterator it(a, j); it; ++it)
            if (it.value() != 0.0)
                touched[it.row()] = touched[j] = 1;
    std::vector<int> act, rest;
    for (int i = 0; i < n; ++i)
        (touched[i] ? act : rest).push_back(i);
    if (act.empty())
        throw NumericalError("stability constant: empty interface matrix");

    const double eps = 1e-12 * b.diagonal().sum() / n;
    SparseMatrix id(n, n);
    id.setIdentity();
    const SparseMatrix breg = b + eps * id;
    Eigen::MatrixXd s = Eigen::MatrixXd(submatrix(breg, act, act));
    if (!rest.empty()) {
        Eigen::SimplicialLDLT<SparseMatrix> rr(submatrix(breg, rest, rest));
        if (rr.info() != Eigen::Success)
            throw NumericalError("stability constant: factorization failed");
        const Eigen::MatrixXd ra = Eigen::MatrixXd(submatrix(breg, rest, act));
        s -= ra.transpose() * rr.solve(ra);
    }
    s = 0.5 * (s + s.transpose()).eval();
    const SparseMatrix sa = submatrix(a, act, act);
    return eigen_extreme(sa, s.sparseView(), Extreme::Max, EigenMethod::Dense).value;
}

} // namespace

double estimate_stability_constant(const Topology& topo, int iface, int p, int r, int n,
                                   const AssemblyOptions& opts)
{
    const Interface& f = topo.interfaces.at(iface);
    auto pair = std::make_shared<const Topology>(detect_topology({topo.patches[f.k], topo.patches[f.l]}));
    if (pair->interfaces.size() != 1)
        throw ConformityError("stability constant: patches " + std::to_string(f.k) + " and " +
                              std::to_string(f.l) + " do not share exactly one interface");
    const DiscreteSpace space = build_c0_space(pair, p, r, n);
    const SparseMatrix a = interface_matrices(space, 0, opts).avg_avg;
    const SparseMatrix b = laplace_matrix(space, opts);
    const double c = reduced_max_eigenvalue(a, b);
    if (!(c > 0.0))
        throw NumericalError("stability constant: non-positive eigenvalue");
    return c;
}

std::vector<double> stability_parameters(const Topology& topo, int p, int r, int n0, double mult,
                                         const AssemblyOptions& opts)
{
    const double h0 = 1.0 / n0;
    std::vector<double> eta;
    for (std::size_t i = 0; i < topo.interfaces.size(); ++i)
        eta.push_back(mult * estimate_stability_constant(topo, static_cast<int>(i), p, r, n0, opts) / h0);
    return eta;
}

} // namespace approxc1
