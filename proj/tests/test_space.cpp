#include "doctest.h"

#include "approxc1/assembly.hpp"
#include "approxc1/c0space.hpp"
#include "approxc1/c1space.hpp"
#include "approxc1/error.hpp"
#include "approxc1/fixtures.hpp"
#include "approxc1/norms.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>

using namespace approxc1;

namespace {

std::shared_ptr<const Topology> topo_of(const std::string& name)
{
    return std::make_shared<const Topology>(detect_topology(builtin_geometry(name)));
}

Eigen::VectorXd unit(int n, int i)
{
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[i] = 1.0;
    return e;
}

} // namespace

TEST_SUITE("c1space")
{
    TEST_CASE("dof counts for p = 3, n = 4")
    {
        const auto t = topo_of("square-6-bilinear");
        const DiscreteSpace s = build_approx_c1_space(t, 3, 2, 4);
        std::map<std::pair<DofKind, int>, int> count;
        for (const DofInfo& d : s.dofs)
            ++count[{d.kind, d.owner}];
        for (const auto& [key, c] : count) {
            switch (key.first) {
            case DofKind::Interior:
                CHECK(c == 9);
                break;
            case DofKind::Interface:
            case DofKind::BoundaryEdge:
                CHECK(c == 3);
                break;
            case DofKind::Vertex:
                CHECK(c == 6);
                break;
            default:
                FAIL("unexpected dof kind");
            }
        }
        CHECK(s.size() == 6 * 9 + 7 * 3 + 10 * 3 + 12 * 6);
    }

    TEST_CASE("vertex dofs are dual to the physical 2-jet at the vertex")
    {
        for (const std::string name : {"square-6-bilinear", "square-2-bicubic", "square-3-bilinear"}) {
            const auto t = topo_of(name);
            const DiscreteSpace s = build_approx_c1_space(t, 3, 2, 4);
            for (int d = 0; d < s.size(); ++d) {
                if (s.dofs[d].kind != DofKind::Vertex)
                    continue;
                const int m = d - [&] {
                    int first = d;
                    while (first > 0 && s.dofs[first - 1].kind == DofKind::Vertex &&
                           s.dofs[first - 1].owner == s.dofs[d].owner)
                        --first;
                    return first;
                }();
                const Eigen::VectorXd atoms = atom_coefficients(s, unit(s.size(), d));
                for (auto [k, c] : t->vertices[s.dofs[d].owner].incident) {
                    const Vec2 uv = corner_uv(c);
                    const auto jet = physical_jet(eval_geometry(t->patches[k], uv[0], uv[1]),
                                                  eval_patch_function(s, atoms, k, uv[0], uv[1]))
                                         .as_array();
                    for (int i = 0; i < 6; ++i)
                        CHECK(std::abs(jet[i] - (i == m ? 1.0 : 0.0)) <= 1e-9);
                }
            }
        }
    }

    TEST_CASE("every basis function is C1 on the bilinear fixture")
    {
        const auto t = topo_of("square-6-bilinear");
        const DiscreteSpace s = build_approx_c1_space(t, 3, 2, 4);
        for (int d = 0; d < s.size(); ++d)
            for (double j : jump_norms(s, Eigen::VectorXd::Unit(s.size(), d)))
                CHECK(j <= 1e-10);
    }

    TEST_CASE("curved interface: basis jumps are nonzero at n = 4")
    {
        const auto t = topo_of("square-2-bicubic");
        const DiscreteSpace s = build_approx_c1_space(t, 3, 2, 4);
        const SparseMatrix jj = interface_matrices(s, 0).jump_jump;
        double worst = 0.0;
        for (int d = 0; d < s.size(); ++d)
            worst = std::max(worst, std::sqrt(std::abs(jj.coeff(d, d))));
        CHECK(worst > 1e-8);
    }

    TEST_CASE("global Gram matrix has full rank")
    {
        for (const std::string name : {"square-6-bilinear", "square-2-bicubic"})
            for (int n : {4, 8}) {
                const DiscreteSpace s = build_approx_c1_space(topo_of(name), 3, 2, n);
                const Eigen::MatrixXd g = Eigen::MatrixXd(h2_gram(s));
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
                const auto& ev = es.eigenvalues();
                CAPTURE(name);
                CAPTURE(n);
                CHECK(ev[0] > 1e-13 * ev[ev.size() - 1]);
            }
    }

    TEST_CASE("homogeneous subspace: free vertex dofs per vertex type")
    {
        const auto t = topo_of("square-6-bilinear");
        for (BcType bc : {BcType::Neumann, BcType::Laplace})
            for (int n : {4, 16}) {
                const DiscreteSpace s = homogeneous_subspace(build_approx_c1_space(t, 3, 2, n), uniform_bc(*t, bc));
                std::vector<int> free(t->vertices.size(), 0);
                for (const DofInfo& d : s.dofs)
                    if (d.kind == DofKind::Vertex && !d.boundary)
                        ++free[d.owner];
                for (std::size_t v = 0; v < free.size(); ++v) {
                    int expected = 6;
                    if (t->vertices[v].kind == VertexKind::Corner)
                        expected = bc == BcType::Neumann ? 0 : 1;
                    else if (t->vertices[v].kind == VertexKind::InterfaceBoundary)
                        expected = bc == BcType::Neumann ? 1 : 3;
                    CHECK(free[v] == expected);
                }
            }
    }

    TEST_CASE("parameter validation")
    {
        const auto t = topo_of("square-1");
        CHECK_THROWS_AS(build_approx_c1_space(t, 3, 3, 4), ParameterError);
        CHECK_THROWS_AS(build_approx_c1_space(t, 3, 2, 2), ParameterError);
        CHECK_THROWS_AS(build_approx_c1_space(t, 1, 0, 8), ParameterError);
    }
}

TEST_SUITE("c0space")
{
    TEST_CASE("dimension and continuity across interfaces")
    {
        const auto t = topo_of("square-6-bilinear");
        const DiscreteSpace s = build_c0_space(t, 3, 2, 4);
        // 6 patches of 7 x 7 functions, 7 shared per interface, corrected at
        // the two inner vertices where four interfaces meet.
        CHECK(s.size() == 6 * 49 - 7 * 7 + 2);
        for (int d = 0; d < s.size(); d += 5) {
            const Eigen::VectorXd atoms = atom_coefficients(s, unit(s.size(), d));
            for (const Interface& f : t->interfaces)
                for (double x : {0.1, 0.5, 0.85}) {
                    const Vec2 a = f.map_k().to_uv(0.0, x), b = f.map_l().to_uv(0.0, x);
                    const double va = eval_patch_function(s, atoms, f.k, a[0], a[1])[0];
                    const double vb = eval_patch_function(s, atoms, f.l, b[0], b[1])[0];
                    CHECK(std::abs(va - vb) <= 1e-14);
                }
        }
    }
}
