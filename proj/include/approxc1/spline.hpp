#pragma once

#include <Eigen/Core>

#include <functional>
#include <span>
#include <vector>

namespace approxc1 {

/// Spline coefficients, indexed like the basis of the owning space.
using CoefficientVector = Eigen::VectorXd;

/// Open knot vector on [0,1].
///
/// The uniform factory builds the knot vector used throughout the solver:
/// p+1 knots at each end and every interior breakpoint i/n repeated p-r
/// times. Knot vectors read from geometry files may be non-uniform; in that
/// case `regularity()` reports the minimum continuity over interior knots.
class KnotVector {
public:
    static KnotVector uniform(int degree, int regularity, int elements);
    static KnotVector from_knots(int degree, std::vector<double> knots);

    int degree() const { return degree_; }
    int regularity() const { return regularity_; }
    int elements() const { return static_cast<int>(breaks_.size()) - 1; }
    /// Number of basis functions.
    int size() const { return static_cast<int>(knots_.size()) - degree_ - 1; }
    /// Mesh size of a uniform knot vector (1/n).
    double mesh_size() const { return 1.0 / elements(); }

    const std::vector<double>& knots() const { return knots_; }
    double operator[](int i) const { return knots_[i]; }
    /// Distinct knot values, 0 and 1 included.
    const std::vector<double>& breaks() const { return breaks_; }

    /// Index of the knot span containing x; x = 1 belongs to the last span.
    int find_span(double x) const;
    /// Element (break interval) containing x with the same conventions.
    int find_element(double x) const;

    /// Range of elements [first, last) on which basis function i is supported.
    std::pair<int, int> support_elements(int i) const;

    bool operator==(const KnotVector& other) const = default;

private:
    KnotVector() = default;
    void finish();

    int degree_ = 0;
    int regularity_ = 0;
    std::vector<double> knots_;
    std::vector<double> breaks_;
};

/// Values and derivatives of the p+1 basis functions that may be nonzero at
/// a point. `operator()(k, j)` is the k-th derivative of basis function
/// `first + j`.
struct BasisTable {
    int first = 0;
    int degree = 0;
    int max_deriv = 0;
    std::vector<double> data;

    double operator()(int k, int j) const { return data[k * (degree + 1) + j]; }
    double& operator()(int k, int j) { return data[k * (degree + 1) + j]; }

    /// k-th derivative of global basis function i (zero outside the table).
    double at(int k, int i) const
    {
        const int j = i - first;
        if (j < 0 || j > degree || k > max_deriv)
            return 0.0;
        return (*this)(k, j);
    }
};

/// Univariate spline space S(p, r, h).
class SplineSpace {
public:
    SplineSpace() : SplineSpace(KnotVector::uniform(1, 0, 1)) {}
    explicit SplineSpace(KnotVector kv) : kv_(std::move(kv)) {}
    SplineSpace(int degree, int regularity, int elements)
        : kv_(KnotVector::uniform(degree, regularity, elements))
    {
    }

    const KnotVector& knot_vector() const { return kv_; }
    int degree() const { return kv_.degree(); }
    int dim() const { return kv_.size(); }
    int elements() const { return kv_.elements(); }

    /// Cox-de Boor evaluation of all basis functions nonzero at x, with
    /// derivatives up to `max_deriv`. Derivatives above the degree are zero.
    BasisTable eval_basis(double x, int max_deriv) const;

    /// Derivatives 0..max_deriv of the spline with the given coefficients.
    std::vector<double> eval(const CoefficientVector& coefs, double x, int max_deriv) const;

    bool operator==(const SplineSpace& other) const = default;

private:
    KnotVector kv_;
};

/// Least-squares projection of f onto the space (Gauss rule with p+1 points
/// per knot span; the mass matrix is factored by Cholesky).
CoefficientVector l2_project(const SplineSpace& target, const std::function<double(double)>& f);

/// Tensor product space S_u (x) S_v; basis index i1 + N1 * i2.
class TensorSplineSpace {
public:
    TensorSplineSpace() = default;
    TensorSplineSpace(SplineSpace su, SplineSpace sv) : su_(std::move(su)), sv_(std::move(sv)) {}

    const SplineSpace& space_u() const { return su_; }
    const SplineSpace& space_v() const { return sv_; }
    const SplineSpace& space(int dir) const { return dir == 0 ? su_ : sv_; }
    int dim() const { return su_.dim() * sv_.dim(); }
    int index(int i1, int i2) const { return i1 + su_.dim() * i2; }

    bool operator==(const TensorSplineSpace& other) const = default;

private:
    SplineSpace su_;
    SplineSpace sv_;
};

/// All partial derivatives of a tensor spline up to total order `max_deriv`,
/// ordered by total order and then by decreasing u-order:
/// (f, f_u, f_v, f_uu, f_uv, f_vv, f_uuu, ...).
std::vector<double> tensor_eval(const TensorSplineSpace& space, const CoefficientVector& coefs, double u,
                                double v, int max_deriv);

} // namespace approxc1
