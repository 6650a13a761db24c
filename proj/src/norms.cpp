#include "approxc1/norms.hpp"

#include "approxc1/quadrature.hpp"

#include <cmath>

namespace approxc1 {

namespace {

PhysicalJet solution_jet(const DiscreteSpace& space, const Eigen::VectorXd& atoms, int k, double u, double v,
                         GeometryJet* geo_out = nullptr)
{
    const GeometryJet geo = eval_geometry(space.patches[k].geometry(), u, v);
    if (geo_out)
        *geo_out = geo;
    return physical_jet(geo, eval_patch_function(space, atoms, k, u, v));
}

} // namespace

ErrorReport error_norms(const DiscreteSpace& space, const Eigen::VectorXd& dofs, const JetFunction& exact,
                        int points)
{
    const Eigen::VectorXd atoms = atom_coefficients(space, dofs);
    const int q = points > 0 ? points : space.p + 3;
    const double h = space.h();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int k = 0; k < static_cast<int>(space.patches.size()); ++k)
        for (int e2 = 0; e2 < space.n; ++e2) {
            const auto rv = gauss_legendre(q, e2 * h, (e2 + 1) * h);
            for (int e1 = 0; e1 < space.n; ++e1) {
                const auto ru = gauss_legendre(q, e1 * h, (e1 + 1) * h);
                for (int j = 0; j < q; ++j)
                    for (int i = 0; i < q; ++i) {
                        GeometryJet geo;
                        PhysicalJet d = solution_jet(space, atoms, k, ru.nodes[i], rv.nodes[j], &geo);
                        if (exact) {
                            const PhysicalJet x = exact(geo.x);
                            d.value -= x.value;
                            d.grad -= x.grad;
                            d.hess -= x.hess;
                        }
                        const double w = ru.weights[i] * rv.weights[j] * geo.det();
                        s0 += w * d.value * d.value;
                        s1 += w * d.grad.squaredNorm();
                        s2 += w * d.hess.squaredNorm();
                    }
            }
        }
    ErrorReport rep;
    rep.h = h;
    rep.dofs = static_cast<int>(space.free_dofs().size());
    rep.l2 = std::sqrt(s0);
    rep.h1 = std::sqrt(s0 + s1);
    rep.h2 = std::sqrt(s0 + s1 + s2);
    rep.jumps = jump_norms(space, dofs, points > 0 ? points : 2 * space.p + 1);
    return rep;
}

std::vector<double> jump_norms(const DiscreteSpace& space, const Eigen::VectorXd& dofs, int points)
{
    const Eigen::VectorXd atoms = atom_coefficients(space, dofs);
    const int q = points > 0 ? points : 2 * space.p + 1;
    const double h = space.h();
    std::vector<double> out;
    for (const Interface& f : space.topology->interfaces) {
        const CanonicalMap mk = f.map_k(), ml = f.map_l();
        double s = 0.0;
        for (int e = 0; e < space.n; ++e) {
            const auto rule = gauss_legendre(q, e * h, (e + 1) * h);
            for (int i = 0; i < rule.size(); ++i) {
                const double t = rule.nodes[i];
                const EdgeFrame fr = edge_frame(space.patches[f.k].geometry(), mk, t);
                const Vec2 uk = mk.to_uv(0.0, t), ul = ml.to_uv(0.0, t);
                const PhysicalJet jk = solution_jet(space, atoms, f.k, uk[0], uk[1]);
                const PhysicalJet jl = solution_jet(space, atoms, f.l, ul[0], ul[1]);
                const double jump = (jl.grad - jk.grad).dot(fr.normal);
                s += rule.weights[i] * fr.tau * jump * jump;
            }
        }
        out.push_back(std::sqrt(s));
    }
    return out;
}

} // namespace approxc1
