#pragma once

#include "approxc1/jet.hpp"

#include <functional>

namespace approxc1 {

/// Exact solution with the data needed to pose and measure a problem.
struct ExactSolution {
    std::function<PhysicalJet(const Vec2&)> jet;
    std::function<double(const Vec2&)> bilaplacian;
};

/// (cos(4 pi x) - 1)(cos(4 pi y) - 1); value and gradient vanish on the
/// boundary of the unit square.
ExactSolution cosine_solution();

/// The jet and bilaplacian of the cosine solution, usable without the
/// std::function wrapper.
PhysicalJet cosine_jet(const Vec2& x);
double cosine_bilaplacian(const Vec2& x);

/// x^2 y^2 (representable in S(p,r,h)^2 for p >= 2 on the identity patch).
ExactSolution quartic_solution();

} // namespace approxc1
