#pragma once

#include <vector>

namespace approxc1 {

/// One-dimensional quadrature rule.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

/// q-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree 2q-1.
QuadratureRule gauss_legendre(int q, double a = 0.0, double b = 1.0);

/// The q-point rule replicated on every interval [breaks[i], breaks[i+1]].
QuadratureRule composite_gauss(int q, const std::vector<double>& breaks);

} // namespace approxc1
