#include "approxc1/quadrature.hpp"

#include "approxc1/error.hpp"

#include <cmath>
#include <numbers>

namespace approxc1 {

namespace {

// Nodes and weights on [-1, 1] by Newton iteration on P_q.
void reference_rule(int q, std::vector<double>& x, std::vector<double>& w)
{
    x.assign(q, 0.0);
    w.assign(q, 0.0);
    for (int i = 0; i < (q + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= q; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = q * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16)
                break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = 0.0;
        for (int j = 1; j <= q; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
        }
        dp = q * (z * p0 - p1) / (z * z - 1.0);
        x[i] = -z;
        x[q - 1 - i] = z;
        w[i] = w[q - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    if (q % 2 == 1)
        x[q / 2] = 0.0;
}

} // namespace

QuadratureRule gauss_legendre(int q, double a, double b)
{
    if (q < 1)
        throw ParameterError("gauss_legendre: need at least one point");
    std::vector<double> x, w;
    reference_rule(q, x, w);
    QuadratureRule rule;
    rule.nodes.resize(q);
    rule.weights.resize(q);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (int i = 0; i < q; ++i) {
        rule.nodes[i] = mid + half * x[i];
        rule.weights[i] = half * w[i];
    }
    return rule;
}

QuadratureRule composite_gauss(int q, const std::vector<double>& breaks)
{
    QuadratureRule out;
    for (std::size_t e = 0; e + 1 < breaks.size(); ++e) {
        const auto r = gauss_legendre(q, breaks[e], breaks[e + 1]);
        out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
        out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
    }
    return out;
}

} // namespace approxc1
