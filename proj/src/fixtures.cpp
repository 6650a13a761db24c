#include "approxc1/fixtures.hpp"

#include "approxc1/error.hpp"

#include <cmath>
#include <numbers>

namespace approxc1 {

namespace {

TensorSplineSpace bezier_space(int degree)
{
    const SplineSpace s(degree, degree - 1, 1);
    return {s, s};
}

Patch bilinear(const Vec2& p00, const Vec2& p10, const Vec2& p01, const Vec2& p11)
{
    return Patch(bezier_space(1), {p00, p10, p01, p11});
}

// Bicubic Bezier patch interpolating g at the 4 x 4 equispaced parameters.
template <class F>
Patch bicubic_interpolant(const F& g)
{
    Eigen::Matrix4d b;
    for (int i = 0; i < 4; ++i) {
        const double t = i / 3.0;
        b.row(i) << std::pow(1 - t, 3), 3 * t * std::pow(1 - t, 2), 3 * t * t * (1 - t), t * t * t;
    }
    const Eigen::Matrix4d inv = b.inverse();
    Eigen::Matrix4d x, y;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) {
            const Vec2 p = g(i / 3.0, j / 3.0);
            x(i, j) = p[0];
            y(i, j) = p[1];
        }
    const Eigen::Matrix4d cx = inv * x * inv.transpose(), cy = inv * y * inv.transpose();
    std::vector<Vec2> control;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
            control.emplace_back(cx(i, j), cy(i, j));
    return Patch(bezier_space(3), std::move(control));
}

// 3 x 2 arrangement of the unit square; node(i, j) for i = 0..3, j = 0..2.
template <class Node, class Make>
std::vector<Patch> grid_3x2(const Node& node, const Make& make)
{
    std::vector<Patch> out;
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 3; ++i)
            out.push_back(make(node(i, j), node(i + 1, j), node(i, j + 1), node(i + 1, j + 1)));
    return out;
}

Vec2 grid_node(int i, int j)
{
    return {i / 3.0, j / 2.0};
}

} // namespace

std::vector<std::string> builtin_geometry_names()
{
    return {"square-1", "square-3-bilinear", "square-6-bilinear", "square-2-bicubic", "square-6-bicubic"};
}

BcType default_bc(const std::string& name)
{
    return name.find("bicubic") != std::string::npos ? BcType::Laplace : BcType::Neumann;
}

std::vector<Patch> builtin_geometry(const std::string& name)
{
    std::vector<Patch> out;
    if (name == "square-1") {
        out.push_back(bilinear({0, 0}, {1, 0}, {0, 1}, {1, 1}));
    } else if (name == "square-3-bilinear") {
        // Three quads meeting at an inner vertex of valence three.
        const Vec2 c(0.45, 0.5);
        out.push_back(bilinear({0, 0}, {0.5, 0}, {0, 0.6}, c));
        out.push_back(bilinear({0.5, 0}, {1, 0}, c, {1, 1}));
        out.push_back(bilinear({0, 0.6}, c, {0, 1}, {1, 1}));
    } else if (name == "square-6-bilinear") {
        auto node = [](int i, int j) -> Vec2 {
            if (j == 1 && i == 1)
                return {0.30, 0.55};
            if (j == 1 && i == 2)
                return {0.70, 0.45};
            return grid_node(i, j);
        };
        out = grid_3x2(node, bilinear);
    } else if (name == "square-2-bicubic") {
        // Interface x = X(v), a cubic with the shape of 1/2 + 0.1 sin(pi v).
        const double d = 0.4 / 3.0;
        const double xs[4] = {0.5, 0.5 + d, 0.5 + d, 0.5};
        std::vector<Vec2> left, right;
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) {
                const double u = i / 3.0, v = j / 3.0;
                left.emplace_back(u * xs[j], v);
                right.emplace_back(xs[j] + u * (1.0 - xs[j]), v);
            }
        out.emplace_back(bezier_space(3), std::move(left));
        out.emplace_back(bezier_space(3), std::move(right));
    } else if (name == "square-6-bicubic") {
        const double pi = std::numbers::pi;
        auto warp = [pi](const Vec2& p) -> Vec2 {
            const double x = p[0], y = p[1];
            return {x + 0.06 * std::sin(pi * x) * std::sin(2 * pi * y),
                    y + 0.06 * std::sin(2 * pi * x) * std::sin(pi * y)};
        };
        auto make = [&](const Vec2& p00, const Vec2& p10, const Vec2& p01, const Vec2&) {
            const Vec2 du = p10 - p00, dv = p01 - p00;
            return bicubic_interpolant([&](double u, double v) { return warp(p00 + u * du + v * dv); });
        };
        out = grid_3x2(grid_node, make);
    } else {
        throw ParameterError("unknown geometry '" + name + "'");
    }
    for (const Patch& p : out)
        check_regularity(p);
    return out;
}

} // namespace approxc1
