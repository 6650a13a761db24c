#include "approxc1/spline.hpp"

#include "approxc1/error.hpp"
#include "approxc1/quadrature.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace approxc1 {

KnotVector KnotVector::uniform(int degree, int regularity, int elements)
{
    if (degree < 1 || regularity < 0 || regularity > degree - 1 || elements < 1)
        throw ParameterError("uniform_open_knot_vector: invalid (p, r, n) = (" + std::to_string(degree) + ", " +
                             std::to_string(regularity) + ", " + std::to_string(elements) + ")");
    KnotVector kv;
    kv.degree_ = degree;
    kv.regularity_ = regularity;
    const int mult = degree - regularity;
    kv.knots_.assign(degree + 1, 0.0);
    for (int i = 1; i < elements; ++i)
        kv.knots_.insert(kv.knots_.end(), mult, static_cast<double>(i) / elements);
    kv.knots_.insert(kv.knots_.end(), degree + 1, 1.0);
    kv.finish();
    return kv;
}

KnotVector KnotVector::from_knots(int degree, std::vector<double> knots)
{
    if (degree < 1)
        throw ParameterError("knot vector: degree must be at least 1");
    const int m = static_cast<int>(knots.size());
    if (m < 2 * (degree + 1))
        throw ParameterError("knot vector: need at least 2(p+1) knots");
    if (!std::is_sorted(knots.begin(), knots.end()))
        throw ParameterError("knot vector: knots must be non-decreasing");
    for (int i = 0; i <= degree; ++i) {
        if (knots[i] != 0.0 || knots[m - 1 - i] != 1.0)
            throw ParameterError("knot vector: must be open on [0,1]");
    }
    KnotVector kv;
    kv.degree_ = degree;
    kv.knots_ = std::move(knots);
    kv.finish();
    int max_mult = 0;
    for (std::size_t b = 1; b + 1 < kv.breaks_.size(); ++b) {
        const int mult = static_cast<int>(std::count(kv.knots_.begin(), kv.knots_.end(), kv.breaks_[b]));
        if (mult > degree)
            throw ParameterError("knot vector: interior knot multiplicity exceeds the degree");
        max_mult = std::max(max_mult, mult);
    }
    kv.regularity_ = kv.breaks_.size() > 2 ? degree - max_mult : degree - 1;
    return kv;
}

void KnotVector::finish()
{
    breaks_.clear();
    for (double k : knots_) {
        if (breaks_.empty() || k > breaks_.back())
            breaks_.push_back(k);
    }
}

int KnotVector::find_span(double x) const
{
    const int n = size();
    if (x >= knots_[n])
        return n - 1;
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    const int span = static_cast<int>(it - knots_.begin()) - 1;
    return std::clamp(span, degree_, n - 1);
}

int KnotVector::find_element(double x) const
{
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    const int e = static_cast<int>(it - breaks_.begin()) - 1;
    return std::clamp(e, 0, elements() - 1);
}

std::pair<int, int> KnotVector::support_elements(int i) const
{
    const double lo = knots_[i];
    const double hi = knots_[i + degree_ + 1];
    const int first = static_cast<int>(std::lower_bound(breaks_.begin(), breaks_.end(), lo) - breaks_.begin());
    const int last = static_cast<int>(std::lower_bound(breaks_.begin(), breaks_.end(), hi) - breaks_.begin());
    return {first, last};
}

BasisTable SplineSpace::eval_basis(double x, int max_deriv) const
{
    constexpr double slack = 1e-13;
    if (!(x >= -slack && x <= 1.0 + slack))
        throw DomainError("eval_basis: x = " + std::to_string(x) + " outside [0,1]");
    x = std::clamp(x, 0.0, 1.0);
    if (max_deriv < 0)
        throw ParameterError("eval_basis: negative derivative order");

    const auto& U = kv_.knots();
    const int p = kv_.degree();
    const int span = kv_.find_span(x);
    const int nd = std::min(max_deriv, p);

    // Piegl & Tiller, algorithm A2.3.
    std::vector<double> ndu((p + 1) * (p + 1));
    auto NDU = [&](int i, int j) -> double& { return ndu[i * (p + 1) + j]; };
    std::vector<double> left(p + 1), right(p + 1);
    NDU(0, 0) = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = x - U[span + 1 - j];
        right[j] = U[span + j] - x;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            NDU(j, r) = right[r + 1] + left[j - r];
            const double temp = NDU(r, j - 1) / NDU(j, r);
            NDU(r, j) = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        NDU(j, j) = saved;
    }

    BasisTable table;
    table.first = span - p;
    table.degree = p;
    table.max_deriv = max_deriv;
    table.data.assign((max_deriv + 1) * (p + 1), 0.0);
    for (int j = 0; j <= p; ++j)
        table(0, j) = NDU(j, p);

    std::vector<double> a(2 * (p + 1));
    auto A = [&](int s, int j) -> double& { return a[s * (p + 1) + j]; };
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        A(0, 0) = 1.0;
        for (int k = 1; k <= nd; ++k) {
            double d = 0.0;
            const int rk = r - k;
            const int pk = p - k;
            if (r >= k) {
                A(s2, 0) = A(s1, 0) / NDU(pk + 1, rk);
                d = A(s2, 0) * NDU(rk, pk);
            }
            const int j1 = rk >= -1 ? 1 : -rk;
            const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                A(s2, j) = (A(s1, j) - A(s1, j - 1)) / NDU(pk + 1, rk + j);
                d += A(s2, j) * NDU(rk + j, pk);
            }
            if (r <= pk) {
                A(s2, k) = -A(s1, k - 1) / NDU(pk + 1, r);
                d += A(s2, k) * NDU(r, pk);
            }
            table(k, r) = d;
            std::swap(s1, s2);
        }
    }
    double fac = p;
    for (int k = 1; k <= nd; ++k) {
        for (int j = 0; j <= p; ++j)
            table(k, j) *= fac;
        fac *= (p - k);
    }
    return table;
}

std::vector<double> SplineSpace::eval(const CoefficientVector& coefs, double x, int max_deriv) const
{
    if (coefs.size() != dim())
        throw ParameterError("spline eval: coefficient length mismatch");
    const BasisTable t = eval_basis(x, max_deriv);
    std::vector<double> out(max_deriv + 1, 0.0);
    for (int k = 0; k <= max_deriv; ++k)
        for (int j = 0; j <= t.degree; ++j)
            out[k] += coefs[t.first + j] * t(k, j);
    return out;
}

CoefficientVector l2_project(const SplineSpace& target, const std::function<double(double)>& f)
{
    const int n = target.dim();
    const int p = target.degree();
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    const auto rule = composite_gauss(p + 1, target.knot_vector().breaks());
    for (int q = 0; q < rule.size(); ++q) {
        const double x = rule.nodes[q];
        const double w = rule.weights[q];
        const BasisTable t = target.eval_basis(x, 0);
        const double fx = f(x);
        for (int a = 0; a <= p; ++a) {
            rhs[t.first + a] += w * fx * t(0, a);
            for (int b = 0; b <= p; ++b)
                mass(t.first + a, t.first + b) += w * t(0, a) * t(0, b);
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(mass);
    if (llt.info() != Eigen::Success)
        throw NumericalError("l2_project: mass matrix is not positive definite");
    return llt.solve(rhs);
}

std::vector<double> tensor_eval(const TensorSplineSpace& space, const CoefficientVector& coefs, double u, double v,
                                int max_deriv)
{
    if (coefs.size() != space.dim())
        throw ParameterError("tensor_eval: coefficient length mismatch");
    const BasisTable tu = space.space_u().eval_basis(u, max_deriv);
    const BasisTable tv = space.space_v().eval_basis(v, max_deriv);
    std::vector<double> out;
    out.reserve((max_deriv + 1) * (max_deriv + 2) / 2);
    for (int order = 0; order <= max_deriv; ++order) {
        for (int ku = order; ku >= 0; --ku) {
            const int kv = order - ku;
            double s = 0.0;
            for (int b = 0; b <= tv.degree; ++b) {
                double row = 0.0;
                for (int a = 0; a <= tu.degree; ++a)
                    row += coefs[space.index(tu.first + a, tv.first + b)] * tu(ku, a);
                s += row * tv(kv, b);
            }
            out.push_back(s);
        }
    }
    return out;
}

} // namespace approxc1
