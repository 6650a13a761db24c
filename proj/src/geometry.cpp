#include "approxc1/geometry.hpp"

#include "approxc1/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace approxc1 {

Patch::Patch(TensorSplineSpace space, std::vector<Vec2> control) : space_(std::move(space)), control_(std::move(control))
{
    if (static_cast<int>(control_.size()) != space_.dim())
        throw ParameterError("patch: expected " + std::to_string(space_.dim()) + " control points, got " +
                             std::to_string(control_.size()));
}

std::vector<Vec2> Patch::side_control(int side) const
{
    const int n1 = size_u(), n2 = size_v();
    std::vector<Vec2> out;
    switch (side) {
    case 1:
        for (int i = 0; i < n1; ++i)
            out.push_back(control(i, 0));
        break;
    case 3:
        for (int i = 0; i < n1; ++i)
            out.push_back(control(i, n2 - 1));
        break;
    case 2:
        for (int j = 0; j < n2; ++j)
            out.push_back(control(n1 - 1, j));
        break;
    case 4:
        for (int j = 0; j < n2; ++j)
            out.push_back(control(0, j));
        break;
    default:
        throw ParameterError("side index must be 1..4");
    }
    return out;
}

GeometryJet geometry_jet(const Patch& patch, const BasisTable& tu, const BasisTable& tv)
{
    GeometryJet g;
    g.x.setZero();
    g.jac.setZero();
    g.hess[0].setZero();
    g.hess[1].setZero();
    for (int b = 0; b <= tv.degree; ++b) {
        for (int a = 0; a <= tu.degree; ++a) {
            const Vec2& c = patch.control(tu.first + a, tv.first + b);
            const double n00 = tu(0, a) * tv(0, b);
            const double n10 = tu(1, a) * tv(0, b);
            const double n01 = tu(0, a) * tv(1, b);
            const double n20 = tu(2, a) * tv(0, b);
            const double n11 = tu(1, a) * tv(1, b);
            const double n02 = tu(0, a) * tv(2, b);
            g.x += n00 * c;
            g.jac.col(0) += n10 * c;
            g.jac.col(1) += n01 * c;
            for (int i = 0; i < 2; ++i) {
                g.hess[i](0, 0) += n20 * c[i];
                g.hess[i](0, 1) += n11 * c[i];
                g.hess[i](1, 1) += n02 * c[i];
            }
        }
    }
    for (int i = 0; i < 2; ++i)
        g.hess[i](1, 0) = g.hess[i](0, 1);
    return g;
}

GeometryJet eval_geometry(const Patch& patch, double u, double v)
{
    const BasisTable tu = patch.space().space_u().eval_basis(u, 2);
    const BasisTable tv = patch.space().space_v().eval_basis(v, 2);
    GeometryJet g = geometry_jet(patch, tu, tv);
    if (!(g.det() > 0.0))
        throw DegenerateGeometryError("non-positive Jacobian determinant " + std::to_string(g.det()) + " at (u,v) = (" +
                                      std::to_string(u) + ", " + std::to_string(v) + ")");
    return g;
}

void check_regularity(const Patch& patch, int samples)
{
    for (int j = 0; j <= samples; ++j)
        for (int i = 0; i <= samples; ++i)
            eval_geometry(patch, static_cast<double>(i) / samples, static_cast<double>(j) / samples);
}

Vec2 corner_uv(int corner)
{
    switch (corner) {
    case 1:
        return {0.0, 0.0};
    case 2:
        return {1.0, 0.0};
    case 3:
        return {1.0, 1.0};
    case 4:
        return {0.0, 1.0};
    default:
        throw ParameterError("corner index must be 1..4");
    }
}

std::array<int, 2> side_corners(int side)
{
    switch (side) {
    case 1:
        return {1, 2};
    case 2:
        return {2, 3};
    case 3:
        return {4, 3};
    case 4:
        return {1, 4};
    default:
        throw ParameterError("side index must be 1..4");
    }
}

std::array<int, 2> corner_sides(int corner)
{
    switch (corner) {
    case 1:
        return {1, 4};
    case 2:
        return {1, 2};
    case 3:
        return {3, 2};
    case 4:
        return {3, 4};
    default:
        throw ParameterError("corner index must be 1..4");
    }
}

Vec2 CanonicalMap::to_uv(double w, double t) const
{
    const double tt = reversed ? 1.0 - t : t;
    switch (side) {
    case 1:
        return {tt, w};
    case 2:
        return {1.0 - w, tt};
    case 3:
        return {tt, 1.0 - w};
    case 4:
        return {w, tt};
    default:
        throw ParameterError("side index must be 1..4");
    }
}

Vec2 CanonicalMap::to_wt(double u, double v) const
{
    double w = 0.0, t = 0.0;
    switch (side) {
    case 1:
        w = v, t = u;
        break;
    case 2:
        w = 1.0 - u, t = v;
        break;
    case 3:
        w = 1.0 - v, t = u;
        break;
    case 4:
        w = u, t = v;
        break;
    default:
        throw ParameterError("side index must be 1..4");
    }
    return {w, reversed ? 1.0 - t : t};
}

Mat2 CanonicalMap::jacobian() const
{
    const double s = reversed ? -1.0 : 1.0;
    Mat2 m;
    switch (side) {
    case 1:
        m << 0, 1, s, 0;
        break;
    case 2:
        m << -1, 0, 0, s;
        break;
    case 3:
        m << 0, -1, s, 0;
        break;
    case 4:
        m << 1, 0, 0, s;
        break;
    default:
        throw ParameterError("side index must be 1..4");
    }
    return m;
}

double CanonicalMap::corner_t(int corner) const
{
    const auto c = side_corners(side);
    double t = 0.0;
    if (corner == c[0])
        t = 0.0;
    else if (corner == c[1])
        t = 1.0;
    else
        throw ParameterError("corner " + std::to_string(corner) + " is not on side " + std::to_string(side));
    return reversed ? 1.0 - t : t;
}

EdgeFrame edge_frame(const Patch& patch, const CanonicalMap& map, double t)
{
    const Vec2 uv = map.to_uv(0.0, t);
    const GeometryJet g = eval_geometry(patch, uv[0], uv[1]);
    const Mat2 m = map.jacobian();
    EdgeFrame f;
    f.x = g.x;
    f.d_w = g.jac * m.row(0).transpose();
    f.d_t = g.jac * m.row(1).transpose();
    f.tau = f.d_t.norm();
    if (!(f.tau > 0.0))
        throw DegenerateGeometryError("vanishing edge speed on side " + std::to_string(map.side));
    f.t0 = f.d_t / f.tau;
    f.alpha = g.det();
    f.beta = f.d_w.dot(f.t0) / f.tau;
    f.normal = Vec2(f.t0[1], -f.t0[0]);
    if (f.normal.dot(f.d_w) > 0.0)
        f.normal = -f.normal;
    return f;
}

double exact_normal_derivative(const EdgeFrame& frame, double f_w, double f_t)
{
    if (frame.alpha == 0.0)
        throw SingularGluingError("normal derivative: alpha vanishes");
    return -(frame.tau / frame.alpha) * (f_w - frame.beta * f_t);
}

double bbox_diagonal(const std::vector<Patch>& patches)
{
    Vec2 lo = Vec2::Constant(std::numeric_limits<double>::infinity());
    Vec2 hi = -lo;
    for (const auto& p : patches)
        for (const auto& c : p.control()) {
            lo = lo.cwiseMin(c);
            hi = hi.cwiseMax(c);
        }
    return (hi - lo).norm();
}

} // namespace approxc1
