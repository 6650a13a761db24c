#include "doctest.h"

#include "approxc1/error.hpp"
#include "approxc1/fixtures.hpp"
#include "approxc1/gluing.hpp"
#include "approxc1/jet.hpp"
#include "approxc1/topology.hpp"

#include <cmath>

using namespace approxc1;

namespace {

TensorSplineSpace bezier(int p)
{
    return {SplineSpace(p, p - 1, 1), SplineSpace(p, p - 1, 1)};
}

Patch quad(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d)
{
    return Patch(bezier(1), {a, b, c, d});
}

// G(u, v) = (u + 0.2 u v, v + 0.1 u^2) as a bicubic Bezier patch.
Patch polynomial_patch()
{
    const double usq[4] = {0.0, 0.0, 1.0 / 3.0, 1.0};
    std::vector<Vec2> cp;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
            cp.emplace_back(i / 3.0 + 0.2 * (i / 3.0) * (j / 3.0), j / 3.0 + 0.1 * usq[i]);
    return Patch(bezier(3), cp);
}

} // namespace

TEST_SUITE("geometry")
{
    TEST_CASE("bicubic patch reproduces its polynomial map")
    {
        const Patch g = polynomial_patch();
        for (double u : {0.0, 0.3, 1.0})
            for (double v : {0.0, 0.6, 1.0}) {
                const GeometryJet j = eval_geometry(g, u, v);
                CHECK(std::abs(j.x[0] - (u + 0.2 * u * v)) <= 1e-14);
                CHECK(std::abs(j.x[1] - (v + 0.1 * u * u)) <= 1e-14);
                CHECK(std::abs(j.jac(0, 1) - 0.2 * u) <= 1e-13);
                CHECK(std::abs(j.jac(1, 0) - 0.2 * u) <= 1e-13);
                CHECK(std::abs(j.hess[1](0, 0) - 0.2) <= 1e-12);
                CHECK(std::abs(j.hess[0](0, 1) - 0.2) <= 1e-12);
            }
    }

    TEST_CASE("physical jets match symbolic targets")
    {
        // f(x, y) = x^3 - 2 x y + y^2 composed with G; the parametric jet comes
        // from the forward chain rule.
        const Patch g = polynomial_patch();
        for (double u : {0.15, 0.5, 0.9})
            for (double v : {0.2, 0.75}) {
                const double x = u + 0.2 * u * v, y = v + 0.1 * u * u;
                const double fx = 3 * x * x - 2 * y, fy = -2 * x + 2 * y;
                const double fxx = 6 * x, fxy = -2, fyy = 2;
                const double xu = 1 + 0.2 * v, xv = 0.2 * u, yu = 0.2 * u, yv = 1;
                const double xuu = 0, xuv = 0.2, xvv = 0, yuu = 0.2, yuv = 0, yvv = 0;
                auto second = [&](double au, double av, double bu, double bv, double xab, double yab) {
                    return fxx * au * bu + fxy * (au * bv + av * bu) + fyy * av * bv + fx * xab + fy * yab;
                };
                const Jet pj{x * x * x - 2 * x * y + y * y, fx * xu + fy * yu, fx * xv + fy * yv,
                             second(xu, yu, xu, yu, xuu, yuu), second(xu, yu, xv, yv, xuv, yuv),
                             second(xv, yv, xv, yv, xvv, yvv)};
                const PhysicalJet j = physical_jet(eval_geometry(g, u, v), pj);
                CHECK(std::abs(j.value - pj[0]) <= 1e-12);
                CHECK(std::abs(j.grad[0] - fx) <= 1e-9);
                CHECK(std::abs(j.grad[1] - fy) <= 1e-9);
                CHECK(std::abs(j.hess(0, 0) - fxx) <= 1e-9);
                CHECK(std::abs(j.hess(0, 1) - fxy) <= 1e-9);
                CHECK(std::abs(j.hess(1, 0) - fxy) <= 1e-9);
                CHECK(std::abs(j.hess(1, 1) - fyy) <= 1e-9);
            }
    }

    TEST_CASE("repeated control column is rejected as degenerate")
    {
        const Patch bad = quad({0, 0}, {0, 0}, {0, 1}, {0, 1});
        CHECK_THROWS_AS(check_regularity(bad), DegenerateGeometryError);
        CHECK_THROWS_AS(eval_geometry(bad, 0.5, 0.5), DegenerateGeometryError);
    }

    TEST_CASE("canonical maps are inverse to each other")
    {
        for (int side = 1; side <= 4; ++side)
            for (bool rev : {false, true}) {
                const CanonicalMap m{side, rev};
                const Vec2 uv = m.to_uv(0.3, 0.8);
                const Vec2 wt = m.to_wt(uv[0], uv[1]);
                CHECK(std::abs(wt[0] - 0.3) <= 1e-15);
                CHECK(std::abs(wt[1] - 0.8) <= 1e-15);
                const Vec2 e = m.to_uv(0.0, 0.5);
                CHECK(std::abs(m.jacobian().determinant()) == doctest::Approx(1.0));
                (void)e;
            }
    }
}

TEST_SUITE("topology")
{
    TEST_CASE("golden counts of the builtin fixtures")
    {
        const Topology s1 = detect_topology(builtin_geometry("square-1"));
        CHECK(s1.interfaces.empty());
        CHECK(s1.boundary_edges.size() == 4u);
        CHECK(s1.vertices.size() == 4u);

        const Topology s6 = detect_topology(builtin_geometry("square-6-bilinear"));
        CHECK(s6.interfaces.size() == 7u);
        CHECK(s6.boundary_edges.size() == 10u);
        CHECK(s6.vertices.size() == 12u);
        int inner = 0;
        for (const auto& v : s6.vertices)
            if (v.kind == VertexKind::Inner) {
                ++inner;
                CHECK(v.valence() == 4);
            }
        CHECK(inner == 2);

        const Topology s3 = detect_topology(builtin_geometry("square-3-bilinear"));
        CHECK(s3.interfaces.size() == 3u);
        int valence3 = 0;
        for (const auto& v : s3.vertices)
            valence3 += v.kind == VertexKind::Inner && v.valence() == 3;
        CHECK(valence3 == 1);

        const Topology b2 = detect_topology(builtin_geometry("square-2-bicubic"));
        CHECK(b2.interfaces.size() == 1u);
        CHECK(b2.boundary_edges.size() == 6u);
        CHECK(b2.vertices.size() == 6u);

        const Topology b6 = detect_topology(builtin_geometry("square-6-bicubic"));
        CHECK(b6.interfaces.size() == 7u);
    }

    TEST_CASE("reversed orientation is detected")
    {
        // Second patch has its v direction flipped.
        const Topology t = detect_topology({quad({0, 0}, {1, 0}, {0, 1}, {1, 1}), quad({1, 1}, {2, 1}, {1, 0}, {2, 0})});
        REQUIRE(t.interfaces.size() == 1u);
        CHECK(t.interfaces[0].reversed);
        CHECK(t.interfaces[0].side_k == 2);
        CHECK(t.interfaces[0].side_l == 4);
    }

    TEST_CASE("T-junction is a conformity error naming both patches")
    {
        std::vector<Patch> p{quad({0, 0}, {1, 0}, {0, 2}, {1, 2}), quad({1, 0}, {2, 0}, {1, 1}, {2, 1})};
        try {
            detect_topology(p);
            FAIL("expected a conformity error");
        } catch (const ConformityError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("patch 0") != std::string::npos);
            CHECK(msg.find("patch 1") != std::string::npos);
        }
    }

    TEST_CASE("normals of both sides are opposite and the points coincide")
    {
        const Topology t = detect_topology(builtin_geometry("square-2-bicubic"));
        const Interface& f = t.interfaces[0];
        for (double s : {0.0, 0.3, 0.71, 1.0}) {
            const EdgeFrame a = edge_frame(t.patches[f.k], f.map_k(), s);
            const EdgeFrame b = edge_frame(t.patches[f.l], f.map_l(), s);
            CHECK((a.x - b.x).norm() <= 1e-14);
            CHECK((a.normal + b.normal).norm() <= 1e-13);
            CHECK(a.alpha > 0.0);
            CHECK(b.alpha > 0.0);
        }
    }

    TEST_CASE("exact normal derivative of a smooth function")
    {
        const Topology t = detect_topology(builtin_geometry("square-2-bicubic"));
        const Interface& f = t.interfaces[0];
        auto grad = [](const Vec2& x) { return Vec2(std::cos(x[0]) + x[1], x[0]); };
        for (bool l : {false, true})
            for (double s : {0.2, 0.5, 0.9}) {
                const Patch& g = t.patches[l ? f.l : f.k];
                const CanonicalMap m = l ? f.map_l() : f.map_k();
                const EdgeFrame fr = edge_frame(g, m, s);
                const Vec2 gr = grad(fr.x);
                const double dn = exact_normal_derivative(fr, gr.dot(fr.d_w), gr.dot(fr.d_t));
                CHECK(std::abs(dn - gr.dot(fr.normal)) <= 1e-12);
            }
    }
}

TEST_SUITE("gluing")
{
    TEST_CASE("projection is exact for bilinear patches")
    {
        const Topology t = detect_topology(builtin_geometry("square-6-bilinear"));
        const SplineSpace target(2, 1, 4);
        for (int i = 0; i < static_cast<int>(t.interfaces.size()); ++i) {
            const ApproxGluingData g = approximate_gluing_data(t, i, target);
            for (double s : {0.0, 0.33, 0.5, 0.91, 1.0}) {
                const auto [ak, bk] = gluing_data(t, i, false, s);
                std::array<double, 3> a{}, b{};
                g.k.eval(s, a, b);
                CHECK(std::abs(a[0] - ak) <= 1e-12);
                CHECK(std::abs(b[0] - bk) <= 1e-12);
            }
        }
    }

    TEST_CASE("curved interface: projection error decays")
    {
        const Topology t = detect_topology(builtin_geometry("square-2-bicubic"));
        double prev = 1.0;
        for (int n : {2, 4, 8}) {
            const ApproxGluingData g = approximate_gluing_data(t, 0, SplineSpace(2, 1, n));
            double err = 0.0;
            for (int i = 0; i <= 50; ++i) {
                const double s = i / 50.0;
                std::array<double, 3> a{}, b{};
                g.k.eval(s, a, b);
                err = std::max(err, std::abs(b[0] - gluing_data(t, 0, false, s).second));
            }
            CHECK(err > 0.0);
            CHECK(err < prev);
            prev = err;
        }
    }
}
