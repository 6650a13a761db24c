#include "approxc1/gluing.hpp"

#include "approxc1/error.hpp"
#include "approxc1/quadrature.hpp"

#include <algorithm>
#include <string>

namespace approxc1 {

void SideGluing::eval(double t, std::array<double, 3>& a, std::array<double, 3>& b) const
{
    const BasisTable tb = space.eval_basis(t, 2);
    a = {0.0, 0.0, 0.0};
    b = {0.0, 0.0, 0.0};
    for (int k = 0; k <= 2; ++k)
        for (int j = 0; j <= tb.degree; ++j) {
            a[k] += alpha[tb.first + j] * tb(k, j);
            b[k] += beta[tb.first + j] * tb(k, j);
        }
}

SideGluing project_gluing(const Patch& patch, const CanonicalMap& map, const SplineSpace& target)
{
    SideGluing g;
    g.space = target;
    g.alpha = l2_project(target, [&](double t) { return edge_frame(patch, map, t).alpha; });
    g.beta = l2_project(target, [&](double t) { return edge_frame(patch, map, t).beta; });

    // Positivity of the projected alpha on a fine sample, breakpoints included.
    auto rule = composite_gauss(target.degree() + 2, target.knot_vector().breaks());
    std::vector<double> pts = rule.nodes;
    pts.insert(pts.end(), target.knot_vector().breaks().begin(), target.knot_vector().breaks().end());
    for (double t : pts) {
        std::array<double, 3> a{}, b{};
        g.eval(t, a, b);
        if (!(a[0] > 0.0))
            throw SingularGluingError("projected alpha is not positive at t = " + std::to_string(t) + " on side " +
                                      std::to_string(map.side));
    }
    return g;
}

SideGluing artificial_gluing(const SplineSpace& target)
{
    SideGluing g;
    g.space = target;
    g.alpha = CoefficientVector::Ones(target.dim());
    g.beta = CoefficientVector::Zero(target.dim());
    g.artificial = true;
    return g;
}

ApproxGluingData approximate_gluing_data(const Topology& topo, int iface, const SplineSpace& target)
{
    const Interface& f = topo.interfaces.at(iface);
    return {project_gluing(topo.patches[f.k], f.map_k(), target), project_gluing(topo.patches[f.l], f.map_l(), target)};
}

} // namespace approxc1
