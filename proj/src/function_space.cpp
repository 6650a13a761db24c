#include "approxc1/function_space.hpp"

#include "approxc1/error.hpp"

#include <algorithm>

namespace approxc1 {

PhysicalJet physical_jet(const GeometryJet& geo, const Jet& f)
{
    const double det = geo.det();
    if (!(det > 0.0))
        throw DegenerateGeometryError("physical_jet: non-positive Jacobian determinant");
    const Mat2 jinv = geo.jac.inverse();
    PhysicalJet out;
    out.value = f[0];
    out.grad = jinv.transpose() * Vec2(f[1], f[2]);
    Mat2 hf;
    hf << f[3], f[4], f[4], f[5];
    hf -= out.grad[0] * geo.hess[0] + out.grad[1] * geo.hess[1];
    out.hess = jinv.transpose() * hf * jinv;
    return out;
}

Jet jet_from_wt(const Mat2& m, const Jet& g)
{
    Mat2 h;
    h << g[3], g[4], g[4], g[5];
    const Mat2 huv = m.transpose() * h * m;
    return {g[0],
            m(0, 0) * g[1] + m(1, 0) * g[2],
            m(0, 1) * g[1] + m(1, 1) * g[2],
            huv(0, 0),
            huv(0, 1),
            huv(1, 1)};
}

namespace {

std::vector<std::vector<int>> active_functions(const SplineSpace& s)
{
    std::vector<std::vector<int>> act(s.elements());
    for (int i = 0; i < s.dim(); ++i) {
        const auto [first, last] = s.knot_vector().support_elements(i);
        for (int e = first; e < last; ++e)
            act[e].push_back(i);
    }
    return act;
}

// Element index along (w, t) for a patch element (e1, e2).
std::pair<int, int> element_wt(const CanonicalMap& map, int n, int e1, int e2)
{
    int ew = 0, et = 0;
    switch (map.side) {
    case 1:
        ew = e2, et = e1;
        break;
    case 2:
        ew = n - 1 - e1, et = e2;
        break;
    case 3:
        ew = n - 1 - e2, et = e1;
        break;
    default:
        ew = e1, et = e2;
        break;
    }
    if (map.reversed)
        et = n - 1 - et;
    return {ew, et};
}

} // namespace

PatchAtoms::PatchAtoms(const Patch& geometry, int p, int r, int n, std::array<std::optional<EdgeBasis>, 4> edges)
    : geometry_(&geometry), space_(SplineSpace(p, r, n), SplineSpace(p, r, n)), n_(n), edges_(std::move(edges))
{
    size_ = space_.dim();
    for (auto& e : edges_) {
        if (!e)
            continue;
        e->plus_offset = size_;
        size_ += e->plus.dim();
        e->minus_offset = size_;
        size_ += e->minus.dim();
    }

    const SplineSpace& s = space_.space_u();
    const auto act = active_functions(s);
    const int w_elements = s.knot_vector().support_elements(1).second;
    std::vector<std::vector<int>> act_plus[4], act_minus[4];
    for (int side = 1; side <= 4; ++side)
        if (edges_[side - 1]) {
            act_plus[side - 1] = active_functions(edges_[side - 1]->plus);
            act_minus[side - 1] = active_functions(edges_[side - 1]->minus);
        }

    const int nt = space_.space_u().dim();
    element_atoms_.resize(n * n);
    side_ranges_.resize(n * n);
    for (int e2 = 0; e2 < n; ++e2) {
        for (int e1 = 0; e1 < n; ++e1) {
            auto& list = element_atoms_[e1 + n * e2];
            for (int i2 : act[e2])
                for (int i1 : act[e1])
                    list.push_back(i1 + nt * i2);
            auto& ranges = side_ranges_[e1 + n * e2];
            for (int side = 1; side <= 4; ++side) {
                ranges[side - 1] = static_cast<int>(list.size());
                const auto& e = edges_[side - 1];
                if (!e)
                    continue;
                const auto [ew, et] = element_wt(e->map, n, e1, e2);
                if (ew >= w_elements)
                    continue;
                for (int j : act_plus[side - 1][et])
                    list.push_back(e->plus_offset + j);
                for (int j : act_minus[side - 1][et])
                    list.push_back(e->minus_offset + j);
            }
            ranges[4] = static_cast<int>(list.size());
        }
    }
}

void PatchAtoms::fill_edge_jets(int side, double u, double v, const std::vector<int>& atoms, int lo, int hi,
                                std::vector<Jet>& out) const
{
    const EdgeBasis& e = *edges_[side - 1];
    const Vec2 wt = e.map.to_wt(u, v);
    const double w = std::clamp(wt[0], 0.0, 1.0);
    const double t = std::clamp(wt[1], 0.0, 1.0);
    const int p = space_.space_u().degree();
    const double kappa = 1.0 / (n_ * p);
    const BasisTable tw = space_.space_u().eval_basis(w, 2);
    const double b2[3] = {tw.at(0, 1), tw.at(1, 1), tw.at(2, 1)};
    const double sw[3] = {tw.at(0, 0) + b2[0], tw.at(1, 0) + b2[1], tw.at(2, 0) + b2[2]};
    const BasisTable tp = e.plus.eval_basis(t, 3);
    const BasisTable tm = e.minus.eval_basis(t, 2);
    std::array<double, 3> al{}, be{};
    e.gluing.eval(t, al, be);
    const Mat2 m = e.map.jacobian();

    for (int q = lo; q < hi; ++q) {
        const int a = atoms[q];
        double bp[4] = {0, 0, 0, 0};
        double c[3] = {0, 0, 0};
        if (a < e.minus_offset) {
            const int j = a - e.plus_offset;
            for (int k = 0; k <= 3; ++k)
                bp[k] = tp.at(k, j);
            c[0] = be[0] * bp[1];
            c[1] = be[1] * bp[1] + be[0] * bp[2];
            c[2] = be[2] * bp[1] + 2.0 * be[1] * bp[2] + be[0] * bp[3];
        } else {
            const int j = a - e.minus_offset;
            const double bm[3] = {tm.at(0, j), tm.at(1, j), tm.at(2, j)};
            c[0] = al[0] * bm[0];
            c[1] = al[1] * bm[0] + al[0] * bm[1];
            c[2] = al[2] * bm[0] + 2.0 * al[1] * bm[1] + al[0] * bm[2];
        }
        const Jet g = {bp[0] * sw[0] + kappa * c[0] * b2[0], bp[0] * sw[1] + kappa * c[0] * b2[1],
                       bp[1] * sw[0] + kappa * c[1] * b2[0], bp[0] * sw[2] + kappa * c[0] * b2[2],
                       bp[1] * sw[1] + kappa * c[1] * b2[1], bp[2] * sw[0] + kappa * c[2] * b2[0]};
        out[q] = jet_from_wt(m, g);
    }
}

void PatchAtoms::eval_element(int e1, int e2, double u, double v, std::vector<Jet>& out) const
{
    const auto& atoms = element_atoms(e1, e2);
    const auto& ranges = side_ranges_[e1 + n_ * e2];
    out.resize(atoms.size());
    const BasisTable tu = space_.space_u().eval_basis(u, 2);
    const BasisTable tv = space_.space_v().eval_basis(v, 2);
    const int nt = space_.space_u().dim();
    for (int q = 0; q < ranges[0]; ++q) {
        const int i1 = atoms[q] % nt, i2 = atoms[q] / nt;
        const double u0 = tu.at(0, i1), u1 = tu.at(1, i1), u2 = tu.at(2, i1);
        const double v0 = tv.at(0, i2), v1 = tv.at(1, i2), v2 = tv.at(2, i2);
        out[q] = {u0 * v0, u1 * v0, u0 * v1, u2 * v0, u1 * v1, u0 * v2};
    }
    for (int side = 1; side <= 4; ++side) {
        const int lo = ranges[side - 1], hi = ranges[side];
        if (lo < hi)
            fill_edge_jets(side, u, v, atoms, lo, hi, out);
    }
}

Jet PatchAtoms::eval_atom(int atom, double u, double v) const
{
    const int e1 = space_.space_u().knot_vector().find_element(u);
    const int e2 = space_.space_v().knot_vector().find_element(v);
    const auto& atoms = element_atoms(e1, e2);
    const auto it = std::find(atoms.begin(), atoms.end(), atom);
    if (it == atoms.end())
        return Jet{};
    std::vector<Jet> jets;
    eval_element(e1, e2, u, v, jets);
    return jets[it - atoms.begin()];
}

std::vector<int> DiscreteSpace::free_dofs() const
{
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (!dofs[i].boundary)
            out.push_back(i);
    return out;
}

std::vector<int> DiscreteSpace::boundary_dofs() const
{
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (dofs[i].boundary)
            out.push_back(i);
    return out;
}

BcSpec uniform_bc(const Topology& topo, BcType type)
{
    return BcSpec(topo.boundary_edges.size(), type);
}

Eigen::VectorXd atom_coefficients(const DiscreteSpace& space, const Eigen::VectorXd& dof_coefs)
{
    if (dof_coefs.size() != space.size())
        throw ParameterError("atom_coefficients: length mismatch");
    return space.coupling * dof_coefs;
}

Jet eval_patch_function(const DiscreteSpace& space, const Eigen::VectorXd& atoms, int patch, double u, double v)
{
    const PatchAtoms& pa = space.patches[patch];
    const int e1 = pa.space().space_u().knot_vector().find_element(u);
    const int e2 = pa.space().space_v().knot_vector().find_element(v);
    std::vector<Jet> jets;
    pa.eval_element(e1, e2, u, v, jets);
    const auto& list = pa.element_atoms(e1, e2);
    Jet out{};
    const int off = space.atom_offset[patch];
    for (std::size_t q = 0; q < list.size(); ++q) {
        const double c = atoms[off + list[q]];
        for (int k = 0; k < 6; ++k)
            out[k] += c * jets[q][k];
    }
    return out;
}

} // namespace approxc1
