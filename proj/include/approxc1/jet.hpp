#pragma once

#include "approxc1/geometry.hpp"

#include <array>

namespace approxc1 {

/// Parametric derivatives (f, f_u, f_v, f_uu, f_uv, f_vv).
using Jet = std::array<double, 6>;

/// Value, gradient and Hessian in physical coordinates.
struct PhysicalJet {
    double value = 0.0;
    Vec2 grad = Vec2::Zero();
    Mat2 hess = Mat2::Zero();

    double laplacian() const { return hess(0, 0) + hess(1, 1); }
    /// (value, x, y, xx, xy, yy).
    std::array<double, 6> as_array() const
    {
        return {value, grad[0], grad[1], hess(0, 0), hess(0, 1), hess(1, 1)};
    }
};

/// Chain rule: grad_x = J^-T grad_f, Hess_x = J^-T (Hess_f - sum_i (d/dx_i) Hess F_i) J^-1.
PhysicalJet physical_jet(const GeometryJet& geo, const Jet& f);

/// Parametric jet of a function given in (w, t) coordinates of a canonical
/// map, M = d(w,t)/d(u,v).
Jet jet_from_wt(const Mat2& m, const Jet& g_wt);

} // namespace approxc1
