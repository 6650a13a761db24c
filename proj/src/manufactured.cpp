#include "approxc1/manufactured.hpp"

#include <cmath>
#include <numbers>

namespace approxc1 {

namespace {
constexpr double a = 4.0 * std::numbers::pi;
}

PhysicalJet cosine_jet(const Vec2& x)
{
    const double cx = std::cos(a * x[0]), sx = std::sin(a * x[0]);
    const double cy = std::cos(a * x[1]), sy = std::sin(a * x[1]);
    const double fx = cx - 1.0, fy = cy - 1.0;
    PhysicalJet j;
    j.value = fx * fy;
    j.grad = Vec2(-a * sx * fy, -a * fx * sy);
    j.hess << -a * a * cx * fy, a * a * sx * sy, a * a * sx * sy, -a * a * fx * cy;
    return j;
}

double cosine_bilaplacian(const Vec2& x)
{
    const double cx = std::cos(a * x[0]), cy = std::cos(a * x[1]);
    const double a4 = a * a * a * a;
    return a4 * (cx * (cy - 1.0) + 2.0 * cx * cy + (cx - 1.0) * cy);
}

ExactSolution cosine_solution()
{
    return {cosine_jet, cosine_bilaplacian};
}

ExactSolution quartic_solution()
{
    ExactSolution s;
    s.jet = [](const Vec2& x) {
        PhysicalJet j;
        const double u = x[0], v = x[1];
        j.value = u * u * v * v;
        j.grad = Vec2(2 * u * v * v, 2 * u * u * v);
        j.hess << 2 * v * v, 4 * u * v, 4 * u * v, 2 * u * u;
        return j;
    };
    s.bilaplacian = [](const Vec2&) { return 8.0; };
    return s;
}

} // namespace approxc1
