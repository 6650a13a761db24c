#pragma once

#include "approxc1/spline.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace approxc1 {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Tensor-product spline map F: [0,1]^2 -> R^2. Control point (i1, i2) is
/// stored at i1 + N1 * i2, matching TensorSplineSpace::index.
class Patch {
public:
    Patch(TensorSplineSpace space, std::vector<Vec2> control);

    const TensorSplineSpace& space() const { return space_; }
    const std::vector<Vec2>& control() const { return control_; }
    const Vec2& control(int i1, int i2) const { return control_[space_.index(i1, i2)]; }
    int size_u() const { return space_.space_u().dim(); }
    int size_v() const { return space_.space_v().dim(); }

    /// Control points along a side (1: v=0, 2: u=1, 3: v=1, 4: u=0) in the
    /// direction of increasing u (sides 1, 3) or v (sides 2, 4).
    std::vector<Vec2> side_control(int side) const;

private:
    TensorSplineSpace space_;
    std::vector<Vec2> control_;
};

/// Point, Jacobian (columns dF/du, dF/dv) and the parametric Hessian of each
/// component of F.
struct GeometryJet {
    Vec2 x;
    Mat2 jac;
    std::array<Mat2, 2> hess;

    double det() const { return jac.determinant(); }
};

GeometryJet eval_geometry(const Patch& patch, double u, double v);

/// Same as eval_geometry from precomputed basis tables (max_deriv >= 2); does
/// not check the determinant.
GeometryJet geometry_jet(const Patch& patch, const BasisTable& tu, const BasisTable& tv);

/// Samples det(grad F) on a (samples+1)^2 grid and throws
/// DegenerateGeometryError if it is not positive somewhere.
void check_regularity(const Patch& patch, int samples = 16);

/// (u, v) of corner c (1: (0,0), 2: (1,0), 3: (1,1), 4: (0,1)).
Vec2 corner_uv(int corner);
/// Corners at the start and end of a side in its natural direction.
std::array<int, 2> side_corners(int side);
/// The two sides meeting at a corner, the side along u first.
std::array<int, 2> corner_sides(int corner);

/// Affine reparametrization (w, t) -> (u, v) that turns a side into the
/// u = 0 edge: w is the inward transversal parameter, t the edge parameter,
/// reversed when the edge is traversed against its natural direction.
struct CanonicalMap {
    int side = 4;
    bool reversed = false;

    Vec2 to_uv(double w, double t) const;
    Vec2 to_wt(double u, double v) const;
    /// d(w,t)/d(u,v); orthogonal, so d(u,v)/d(w,t) is its transpose.
    Mat2 jacobian() const;
    /// Edge parameter of a corner on this side (0 or 1).
    double corner_t(int corner) const;
    /// Tensor index of the direction along the edge (0 = u, 1 = v).
    int tangential_dir() const { return side == 1 || side == 3 ? 0 : 1; }
};

/// Geometric quantities at the edge point t of a canonicalized side.
///
/// alpha is det(grad F), positive for a regular patch, and beta the tangential
/// component of the transversal derivative divided by the speed. With these,
/// the outward normal derivative of f o F^-1 is -(tau/alpha)(f_w - beta f_t).
struct EdgeFrame {
    Vec2 x;
    Vec2 d_w;
    Vec2 d_t;
    double tau = 0.0;
    Vec2 t0;
    Vec2 normal;
    double alpha = 0.0;
    double beta = 0.0;
};

EdgeFrame edge_frame(const Patch& patch, const CanonicalMap& map, double t);

/// Outward normal derivative from the canonical parametric derivatives.
double exact_normal_derivative(const EdgeFrame& frame, double f_w, double f_t);

/// Bounding-box diagonal of all control points.
double bbox_diagonal(const std::vector<Patch>& patches);

} // namespace approxc1
