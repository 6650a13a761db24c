#include "approxc1/assembly.hpp"

#include "approxc1/error.hpp"
#include "approxc1/quadrature.hpp"

#include <Eigen/QR>

#include <exception>
#include <string>

namespace approxc1 {

Problem problem_from(const ExactSolution& exact, bool homogeneous)
{
    Problem p;
    p.f = exact.bilaplacian;
    auto jet = exact.jet;
    p.g2 = [jet](const Vec2& x) { return jet(x).laplacian(); };
    if (!homogeneous)
        p.essential = exact.jet;
    return p;
}

namespace detail {

struct Local {
    std::vector<int> ids;
    Eigen::MatrixXd mat;
    Eigen::VectorXd vec;
};

// Sums local contributions into an atom-level matrix (and vector). The
// parallel path evaluates fixed chunks of blocks concurrently and merges each
// chunk in block order, so the result does not depend on the thread count.
template <class Compute>
void accumulate(int nblocks, int dim, const Compute& compute, bool parallel, SparseMatrix& mat,
                Eigen::VectorXd* vec)
{
    mat.resize(dim, dim);
    mat.setZero();
    if (vec)
        vec->setZero(dim);

    auto push = [&](const Local& l, std::vector<Eigen::Triplet<double>>& trip) {
        const int na = static_cast<int>(l.ids.size());
        if (l.mat.size() > 0)
            for (int j = 0; j < na; ++j)
                for (int i = 0; i < na; ++i)
                    if (l.mat(i, j) != 0.0)
                        trip.emplace_back(l.ids[i], l.ids[j], l.mat(i, j));
        if (vec && l.vec.size() > 0)
            for (int i = 0; i < na; ++i)
                (*vec)[l.ids[i]] += l.vec[i];
    };

    if (!parallel) {
        std::vector<Eigen::Triplet<double>> trip;
        Local l;
        for (int b = 0; b < nblocks; ++b) {
            compute(b, l);
            push(l, trip);
        }
        mat.setFromTriplets(trip.begin(), trip.end());
        return;
    }

    // Element contributions are merged in element order, so the result is
    // bit-identical to the serial loop for any thread count.
    constexpr int chunk = 256;
    std::vector<Local> locals(chunk);
    std::vector<Eigen::Triplet<double>> trip;
    for (int start = 0; start < nblocks; start += chunk) {
        const int count = std::min(chunk, nblocks - start);
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4)
        for (int i = 0; i < count; ++i) {
            try {
                compute(start + i, locals[i]);
            } catch (...) {
#pragma omp critical
                if (!error)
                    error = std::current_exception();
            }
        }
        if (error)
            std::rethrow_exception(error);
        for (int i = 0; i < count; ++i)
            push(locals[i], trip);
    }
    mat.setFromTriplets(trip.begin(), trip.end());
}

// Physical jets of all atoms active on one element at its Gauss points.
struct ElementEval {
    std::vector<int> ids;
    std::vector<double> wdet;
    std::vector<Vec2> x;
    Eigen::MatrixXd val, gx, gy, hxx, hxy, hyy;
};

void eval_element(const DiscreteSpace& space, int k, int e1, int e2, int q, ElementEval& out)
{
    const PatchAtoms& pa = space.patches[k];
    const double h = space.h();
    const auto ru = gauss_legendre(q, e1 * h, (e1 + 1) * h);
    const auto rv = gauss_legendre(q, e2 * h, (e2 + 1) * h);
    const auto& local = pa.element_atoms(e1, e2);
    const int na = static_cast<int>(local.size());
    const int nq = q * q;
    out.ids.resize(na);
    for (int a = 0; a < na; ++a)
        out.ids[a] = space.atom_offset[k] + local[a];
    out.wdet.resize(nq);
    out.x.resize(nq);
    for (auto* m : {&out.val, &out.gx, &out.gy, &out.hxx, &out.hxy, &out.hyy})
        m->resize(nq, na);
    std::vector<Jet> jets;
    for (int j = 0; j < q; ++j)
        for (int i = 0; i < q; ++i) {
            const int iq = i + q * j;
            const double u = ru.nodes[i], v = rv.nodes[j];
            const GeometryJet geo = eval_geometry(pa.geometry(), u, v);
            out.wdet[iq] = ru.weights[i] * rv.weights[j] * geo.det();
            out.x[iq] = geo.x;
            pa.eval_element(e1, e2, u, v, jets);
            for (int a = 0; a < na; ++a) {
                const PhysicalJet pj = physical_jet(geo, jets[a]);
                out.val(iq, a) = pj.value;
                out.gx(iq, a) = pj.grad[0];
                out.gy(iq, a) = pj.grad[1];
                out.hxx(iq, a) = pj.hess(0, 0);
                out.hxy(iq, a) = pj.hess(0, 1);
                out.hyy(iq, a) = pj.hess(1, 1);
            }
        }
}

// Quantities along one edge span: either both sides of an interface or a
// single boundary side (l absent).
struct EdgeEval {
    std::vector<int> ids;
    std::vector<double> wds;
    std::vector<Vec2> x;
    Eigen::MatrixXd jump;
    Eigen::MatrixXd avg;
};

void eval_side_span(const DiscreteSpace& space, int k, const CanonicalMap& map, double t_mid, std::vector<int>& local,
                    int& e1, int& e2)
{
    const PatchAtoms& pa = space.patches[k];
    const Vec2 uv = map.to_uv(0.0, t_mid);
    e1 = pa.space().space_u().knot_vector().find_element(uv[0]);
    e2 = pa.space().space_v().knot_vector().find_element(uv[1]);
    local = pa.element_atoms(e1, e2);
}

// Edge span e of patch side (k, map); if `ml` is given it is the l side of
// an interface and contributes with a plus sign to the jump.
void eval_edge(const DiscreteSpace& space, int k, const CanonicalMap& mk, int l, const CanonicalMap* ml, int e, int q,
               EdgeEval& out)
{
    const double h = space.h();
    const auto rule = gauss_legendre(q, e * h, (e + 1) * h);
    const double t_mid = (e + 0.5) * h;
    std::vector<int> lk, ll;
    int k1 = 0, k2 = 0, l1 = 0, l2 = 0;
    eval_side_span(space, k, mk, t_mid, lk, k1, k2);
    if (ml)
        eval_side_span(space, l, *ml, t_mid, ll, l1, l2);
    const int nk = static_cast<int>(lk.size()), nl = static_cast<int>(ll.size());
    out.ids.resize(nk + nl);
    for (int a = 0; a < nk; ++a)
        out.ids[a] = space.atom_offset[k] + lk[a];
    for (int a = 0; a < nl; ++a)
        out.ids[nk + a] = space.atom_offset[l] + ll[a];
    const int nq = rule.size();
    out.wds.resize(nq);
    out.x.resize(nq);
    out.jump.resize(nq, nk + nl);
    out.avg.resize(nq, nk + nl);
    std::vector<Jet> jets;
    const double avg_w = ml ? 0.5 : 1.0;
    for (int iq = 0; iq < nq; ++iq) {
        const double t = rule.nodes[iq];
        const Patch& gk = space.patches[k].geometry();
        const EdgeFrame fk = edge_frame(gk, mk, t);
        out.wds[iq] = rule.weights[iq] * fk.tau;
        out.x[iq] = fk.x;
        {
            const Vec2 uv = mk.to_uv(0.0, t);
            const GeometryJet geo = eval_geometry(gk, uv[0], uv[1]);
            space.patches[k].eval_element(k1, k2, uv[0], uv[1], jets);
            for (int a = 0; a < nk; ++a) {
                const PhysicalJet pj = physical_jet(geo, jets[a]);
                out.jump(iq, a) = -pj.grad.dot(fk.normal);
                out.avg(iq, a) = avg_w * pj.laplacian();
            }
        }
        if (ml) {
            const Patch& gl = space.patches[l].geometry();
            const Vec2 uv = ml->to_uv(0.0, t);
            const GeometryJet geo = eval_geometry(gl, uv[0], uv[1]);
            space.patches[l].eval_element(l1, l2, uv[0], uv[1], jets);
            for (int a = 0; a < nl; ++a) {
                const PhysicalJet pj = physical_jet(geo, jets[a]);
                out.jump(iq, nk + a) = pj.grad.dot(fk.normal);
                out.avg(iq, nk + a) = 0.5 * pj.laplacian();
            }
        }
    }
}

int volume_points(const DiscreteSpace& s, const AssemblyOptions& o)
{
    return o.volume_points > 0 ? o.volume_points : s.p + 2;
}

int edge_points(const DiscreteSpace& s, const AssemblyOptions& o)
{
    return o.edge_points > 0 ? o.edge_points : 2 * s.p + 1;
}

SparseMatrix to_dofs(const DiscreteSpace& space, const SparseMatrix& atoms)
{
    SparseMatrix k = space.coupling.transpose() * atoms * space.coupling;
    SparseMatrix kt = k.transpose();
    return 0.5 * (k + kt);
}

// Atom-level volume matrix (Laplacian products) and load.
void volume_terms(const DiscreteSpace& space, const Problem* problem, const AssemblyOptions& opts, SparseMatrix& k,
                  Eigen::VectorXd* load)
{
    const int q = volume_points(space, opts);
    const int n = space.n;
    const int per_patch = n * n;
    const int nblocks = per_patch * static_cast<int>(space.patches.size());
    auto compute = [&](int b, Local& l) {
        const int patch = b / per_patch;
        const int e = b % per_patch;
        ElementEval ev;
        eval_element(space, patch, e % n, e / n, q, ev);
        const Eigen::MatrixXd lap = ev.hxx + ev.hyy;
        const Eigen::Map<const Eigen::VectorXd> w(ev.wdet.data(), ev.wdet.size());
        l.ids = ev.ids;
        l.mat = lap.transpose() * w.asDiagonal() * lap;
        if (load && problem && problem->f) {
            Eigen::VectorXd fw(ev.wdet.size());
            for (int i = 0; i < fw.size(); ++i)
                fw[i] = w[i] * problem->f(ev.x[i]);
            l.vec = ev.val.transpose() * fw;
        } else {
            l.vec.resize(0);
        }
    };
    accumulate(nblocks, space.atom_count, compute, opts.parallel, k, load);
}

// Atom-level load of the Laplace-type boundary term (g2, d_n v).
Eigen::VectorXd laplace_boundary_load(const DiscreteSpace& space, const Problem& problem, const BcSpec& bc,
                                      const AssemblyOptions& opts)
{
    Eigen::VectorXd load = Eigen::VectorXd::Zero(space.atom_count);
    if (!problem.g2)
        return load;
    const Topology& topo = *space.topology;
    const int q = edge_points(space, opts);
    for (int b = 0; b < static_cast<int>(topo.boundary_edges.size()); ++b) {
        if (bc[b] != BcType::Laplace)
            continue;
        const BoundaryEdge& be = topo.boundary_edges[b];
        const CanonicalMap map = topo.side_map(be.patch, be.side);
        for (int e = 0; e < space.n; ++e) {
            EdgeEval ev;
            eval_edge(space, be.patch, map, -1, nullptr, e, q, ev);
            for (int iq = 0; iq < static_cast<int>(ev.wds.size()); ++iq) {
                const double g = problem.g2(ev.x[iq]) * ev.wds[iq];
                // jump column holds -d_n for a single side.
                for (int a = 0; a < static_cast<int>(ev.ids.size()); ++a)
                    load[ev.ids[a]] -= g * ev.jump(iq, a);
            }
        }
    }
    return load;
}

// Least-squares values of the boundary dofs matching the essential data on
// boundary samples (values everywhere, h * normal derivative on
// Neumann-type edges).
Eigen::VectorXd lift(const DiscreteSpace& space, const Problem& problem, const BcSpec& bc,
                     const std::vector<int>& boundary)
{
    Eigen::VectorXd values = Eigen::VectorXd::Zero(boundary.size());
    if (!problem.essential || boundary.empty())
        return values;
    const Topology& topo = *space.topology;
    std::vector<int> col_of(space.size(), -1);
    for (std::size_t i = 0; i < boundary.size(); ++i)
        col_of[boundary[i]] = static_cast<int>(i);
    using RowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
    const RowMatrix by_atom = space.coupling;

    std::vector<Eigen::VectorXd> rows;
    std::vector<double> rhs;
    const int q = space.p + 1;
    const double h = space.h();
    std::vector<Jet> jets;
    for (int b = 0; b < static_cast<int>(topo.boundary_edges.size()); ++b) {
        const BoundaryEdge& be = topo.boundary_edges[b];
        const CanonicalMap map = topo.side_map(be.patch, be.side);
        const PatchAtoms& pa = space.patches[be.patch];
        const bool neumann = bc[b] == BcType::Neumann;
        for (int e = 0; e < space.n; ++e) {
            const auto rule = gauss_legendre(q, e * h, (e + 1) * h);
            for (double t : rule.nodes) {
                const Vec2 uv = map.to_uv(0.0, t);
                const int e1 = pa.space().space_u().knot_vector().find_element(uv[0]);
                const int e2 = pa.space().space_v().knot_vector().find_element(uv[1]);
                const GeometryJet geo = eval_geometry(pa.geometry(), uv[0], uv[1]);
                const EdgeFrame fr = edge_frame(pa.geometry(), map, t);
                pa.eval_element(e1, e2, uv[0], uv[1], jets);
                const auto& local = pa.element_atoms(e1, e2);
                Eigen::VectorXd rv = Eigen::VectorXd::Zero(boundary.size());
                Eigen::VectorXd rn = Eigen::VectorXd::Zero(boundary.size());
                for (std::size_t a = 0; a < local.size(); ++a) {
                    const PhysicalJet pj = physical_jet(geo, jets[a]);
                    const double dn = h * pj.grad.dot(fr.normal);
                    for (RowMatrix::InnerIterator it(by_atom, space.atom_offset[be.patch] + local[a]); it; ++it) {
                        const int c = col_of[it.index()];
                        if (c < 0)
                            continue;
                        rv[c] += it.value() * pj.value;
                        rn[c] += it.value() * dn;
                    }
                }
                const PhysicalJet g = problem.essential(fr.x);
                rows.push_back(rv);
                rhs.push_back(g.value);
                if (neumann) {
                    rows.push_back(rn);
                    rhs.push_back(h * g.grad.dot(fr.normal));
                }
            }
        }
    }
    Eigen::MatrixXd m(rows.size(), boundary.size());
    Eigen::VectorXd r(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        m.row(i) = rows[i].transpose();
        r[i] = rhs[i];
    }
    return m.colPivHouseholderQr().solve(r);
}

AssembledSystem finish(const DiscreteSpace& space, const Problem& problem, const BcSpec& bc, SparseMatrix full,
                       Eigen::VectorXd full_load)
{
    AssembledSystem sys;
    sys.method = space.method;
    sys.full = std::move(full);
    sys.full_load = std::move(full_load);
    sys.free = space.free_dofs();
    sys.boundary = space.boundary_dofs();
    sys.stiffness = submatrix(sys.full, sys.free, sys.free);
    sys.boundary_values = lift(space, problem, bc, sys.boundary);
    sys.load.resize(sys.free.size());
    for (std::size_t i = 0; i < sys.free.size(); ++i)
        sys.load[i] = sys.full_load[sys.free[i]];
    if (sys.boundary_values.size() > 0 && sys.boundary_values.norm() > 0.0)
        sys.load -= submatrix(sys.full, sys.free, sys.boundary) * sys.boundary_values;
    return sys;
}

} // namespace detail

using namespace detail;

SparseMatrix submatrix(const SparseMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols)
{
    SparseMatrix pr(m.rows(), rows.size()), pc(m.cols(), cols.size());
    std::vector<Eigen::Triplet<double>> tr, tc;
    for (std::size_t i = 0; i < rows.size(); ++i)
        tr.emplace_back(rows[i], static_cast<int>(i), 1.0);
    for (std::size_t i = 0; i < cols.size(); ++i)
        tc.emplace_back(cols[i], static_cast<int>(i), 1.0);
    pr.setFromTriplets(tr.begin(), tr.end());
    pc.setFromTriplets(tc.begin(), tc.end());
    return SparseMatrix(pr.transpose() * m * pc);
}

AssembledSystem assemble_approx_c1(const DiscreteSpace& space, const Problem& problem, const BcSpec& bc,
                                   const AssemblyOptions& opts)
{
    if (space.method != Method::ApproxC1)
        throw ParameterError("assemble_approx_c1: space is not an approximate C1 space");
    if (bc.size() != space.topology->boundary_edges.size())
        throw ParameterError("assemble_approx_c1: one boundary tag per boundary edge expected");
    SparseMatrix katom;
    Eigen::VectorXd latom;
    volume_terms(space, &problem, opts, katom, &latom);
    latom += laplace_boundary_load(space, problem, bc, opts);
    return finish(space, problem, bc, to_dofs(space, katom), space.coupling.transpose() * latom);
}

AssembledSystem assemble_nitsche(const DiscreteSpace& space, const Problem& problem, const BcSpec& bc,
                                 const std::vector<double>& eta, const AssemblyOptions& opts)
{
    const Topology& topo = *space.topology;
    if (eta.size() != topo.interfaces.size())
        throw ParameterError("assemble_nitsche: one eta per interface expected");
    for (double e : eta)
        if (!(e > 0.0))
            throw ParameterError("assemble_nitsche: eta must be positive");
    if (bc.size() != topo.boundary_edges.size())
        throw ParameterError("assemble_nitsche: one boundary tag per boundary edge expected");

    SparseMatrix katom;
    Eigen::VectorXd latom;
    volume_terms(space, &problem, opts, katom, &latom);
    latom += laplace_boundary_load(space, problem, bc, opts);

    const int q = edge_points(space, opts);
    const int n = space.n;
    const int nblocks = n * static_cast<int>(topo.interfaces.size());
    const double h = space.h();
    auto compute = [&](int b, Local& l) {
        const int i = b / n;
        const Interface& f = topo.interfaces[i];
        const CanonicalMap ml = f.map_l();
        EdgeEval ev;
        eval_edge(space, f.k, f.map_k(), f.l, &ml, b % n, q, ev);
        const Eigen::Map<const Eigen::VectorXd> w(ev.wds.data(), ev.wds.size());
        const Eigen::MatrixXd ja = ev.jump.transpose() * w.asDiagonal() * ev.avg;
        l.ids = ev.ids;
        // With the jump taken as l - k along the outward normal of k,
        // integration by parts gives the interface terms a plus sign.
        l.mat = ja + ja.transpose() + (eta[i] / h) * (ev.jump.transpose() * w.asDiagonal() * ev.jump);
        l.vec.resize(0);
    };
    SparseMatrix iatom;
    accumulate(nblocks, space.atom_count, compute, opts.parallel, iatom, nullptr);
    AssembledSystem sys = finish(space, problem, bc, to_dofs(space, katom + iatom), space.coupling.transpose() * latom);
    sys.eta = eta;
    return sys;
}

Eigen::VectorXd solve_system(const AssembledSystem& sys, SolveInfo* info)
{
    const Eigen::VectorXd xf = solve_spd(sys.stiffness, sys.load, info);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(sys.full.rows());
    for (std::size_t i = 0; i < sys.free.size(); ++i)
        x[sys.free[i]] = xf[i];
    for (std::size_t i = 0; i < sys.boundary.size(); ++i)
        x[sys.boundary[i]] = sys.boundary_values[i];
    return x;
}

SparseMatrix laplace_matrix(const DiscreteSpace& space, const AssemblyOptions& opts)
{
    SparseMatrix katom;
    volume_terms(space, nullptr, opts, katom, nullptr);
    return to_dofs(space, katom);
}

InterfaceMatrices interface_matrices(const DiscreteSpace& space, int iface, const AssemblyOptions& opts)
{
    const Interface& f = space.topology->interfaces.at(iface);
    const int q = edge_points(space, opts);
    const CanonicalMap ml = f.map_l();
    auto make = [&](int which) {
        auto compute = [&](int e, Local& l) {
            EdgeEval ev;
            eval_edge(space, f.k, f.map_k(), f.l, &ml, e, q, ev);
            const Eigen::Map<const Eigen::VectorXd> w(ev.wds.data(), ev.wds.size());
            l.ids = ev.ids;
            if (which == 0)
                l.mat = ev.jump.transpose() * w.asDiagonal() * ev.jump;
            else if (which == 1)
                l.mat = ev.jump.transpose() * w.asDiagonal() * ev.avg;
            else
                l.mat = ev.avg.transpose() * w.asDiagonal() * ev.avg;
            l.vec.resize(0);
        };
        SparseMatrix atoms;
        accumulate(space.n, space.atom_count, compute, opts.parallel, atoms, nullptr);
        if (which == 1)
            return SparseMatrix(space.coupling.transpose() * atoms * space.coupling);
        return to_dofs(space, atoms);
    };
    return {make(0), make(1), make(2)};
}

SparseMatrix h2_gram(const DiscreteSpace& space, const AssemblyOptions& opts)
{
    const int q = volume_points(space, opts);
    const int n = space.n;
    const int per_patch = n * n;
    const int nblocks = per_patch * static_cast<int>(space.patches.size());
    auto compute = [&](int b, Local& l) {
        ElementEval ev;
        eval_element(space, b / per_patch, (b % per_patch) % n, (b % per_patch) / n, q, ev);
        const Eigen::Map<const Eigen::VectorXd> w(ev.wdet.data(), ev.wdet.size());
        l.ids = ev.ids;
        l.mat.setZero(ev.ids.size(), ev.ids.size());
        for (const auto* m : {&ev.val, &ev.gx, &ev.gy, &ev.hxx, &ev.hxy, &ev.hyy})
            l.mat += m->transpose() * w.asDiagonal() * (*m);
        l.vec.resize(0);
    };
    SparseMatrix atoms;
    accumulate(nblocks, space.atom_count, compute, opts.parallel, atoms, nullptr);
    return to_dofs(space, atoms);
}

} // namespace approxc1
