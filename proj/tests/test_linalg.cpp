#include "doctest.h"

#include "approxc1/error.hpp"
#include "approxc1/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace approxc1;

namespace {

SparseMatrix sparse(const DenseMatrix& m)
{
    return m.sparseView(0.0, 0.0);
}

DenseMatrix random_spd(int n, std::mt19937& rng)
{
    std::normal_distribution<double> g;
    DenseMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = g(rng);
    return a.transpose() * a + DenseMatrix::Identity(n, n);
}

DenseMatrix random_symmetric(int n, std::mt19937& rng)
{
    std::normal_distribution<double> g;
    DenseMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = g(rng);
    return 0.5 * (a + a.transpose());
}

// Cyclic Jacobi rotations; returns the eigenvalues sorted ascending.
std::vector<double> jacobi_eigenvalues(DenseMatrix a)
{
    const int n = static_cast<int>(a.rows());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                off += a(i, j) * a(i, j);
        if (off < 1e-30 * a.squaredNorm())
            break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0)
                    continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i)
        ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

// Generalized problem reduced with the Cholesky factor of B.
std::vector<double> generalized_oracle(const DenseMatrix& a, const DenseMatrix& b)
{
    const DenseMatrix l = Eigen::LLT<DenseMatrix>(b).matrixL();
    const DenseMatrix li = l.inverse();
    return jacobi_eigenvalues(li * a * li.transpose());
}

} // namespace

TEST_SUITE("linalg")
{
    TEST_CASE("solve_spd on small systems")
    {
        const int n = 5;
        const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(n, 1.0, 5.0);
        CHECK((solve_spd(sparse(DenseMatrix::Identity(n, n)), b) - b).norm() <= 1e-14);

        const Eigen::VectorXd d = Eigen::VectorXd::LinSpaced(n, 2.0, 10.0);
        const Eigen::VectorXd x = solve_spd(sparse(DenseMatrix(d.asDiagonal())), b);
        CHECK((x - b.cwiseQuotient(d)).norm() <= 1e-14);

        std::mt19937 rng(11);
        const DenseMatrix a = random_spd(50, rng);
        const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(50);
        SolveInfo info;
        const Eigen::VectorXd y = solve_spd(sparse(a), rhs, &info);
        CHECK((a * y - rhs).norm() <= 1e-10 * rhs.norm());
        CHECK_FALSE(info.used_cg);
    }

    TEST_CASE("pcg converges and rejects indefinite matrices")
    {
        std::mt19937 rng(5);
        const DenseMatrix a = random_spd(30, rng);
        const Eigen::VectorXd b = Eigen::VectorXd::Ones(30);
        int it = 0;
        const Eigen::VectorXd x = solve_pcg(sparse(a), b, 1e-12, 1500, &it);
        CHECK((a * x - b).norm() <= 1e-10 * b.norm());
        CHECK(it > 0);

        DenseMatrix ind = DenseMatrix::Identity(3, 3);
        ind(2, 2) = -1.0;
        CHECK_THROWS_AS(solve_spd(sparse(ind), Eigen::VectorXd::Ones(3)), IndefiniteError);
    }

    TEST_CASE("extreme eigenvalues of diagonal problems")
    {
        const DenseMatrix a = Eigen::Vector3d(1, 2, 3).asDiagonal();
        CHECK(eigen_extreme(sparse(a), {}, Extreme::Max).value == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(eigen_extreme(sparse(a), {}, Extreme::Min).value == doctest::Approx(1.0).epsilon(1e-12));

        const DenseMatrix ga = Eigen::Vector2d(2, 8).asDiagonal();
        const DenseMatrix gb = Eigen::Vector2d(1, 2).asDiagonal();
        // The eps = 1e-12 trace/dim shift on B only moves the values at that order.
        CHECK(eigen_extreme(sparse(ga), sparse(gb), Extreme::Max).value == doctest::Approx(4.0).epsilon(1e-10));
        CHECK(eigen_extreme(sparse(ga), sparse(gb), Extreme::Min).value == doctest::Approx(2.0).epsilon(1e-10));
    }

    TEST_CASE("dense generalized solver against a Jacobi oracle")
    {
        std::mt19937 rng(7);
        for (int n : {4, 12, 25, 40}) {
            const DenseMatrix a = random_symmetric(n, rng);
            const DenseMatrix b = random_spd(n, rng);
            const std::vector<double> ev = generalized_oracle(a, b);
            const double scale = std::max(std::abs(ev.front()), std::abs(ev.back()));
            const auto mx = eigen_extreme(sparse(a), sparse(b), Extreme::Max, EigenMethod::Dense);
            const auto mn = eigen_extreme(sparse(a), sparse(b), Extreme::Min, EigenMethod::Dense);
            CHECK(std::abs(mx.value - ev.back()) <= 1e-8 * scale);
            CHECK(std::abs(mn.value - ev.front()) <= 1e-8 * scale);
        }
    }

    TEST_CASE("power iteration agrees with the dense solver")
    {
        std::mt19937 rng(9);
        for (int trial = 0; trial < 20; ++trial) {
            // Shifted SPD pencils keep the extreme eigenvalue well separated in magnitude.
            const int n = 15 + trial;
            const DenseMatrix a = random_spd(n, rng);
            const DenseMatrix b = random_spd(n, rng);
            const double dense = eigen_extreme(sparse(a), sparse(b), Extreme::Max, EigenMethod::Dense).value;
            const double power = eigen_extreme(sparse(a), sparse(b), Extreme::Max, EigenMethod::Power).value;
            CHECK(power == doctest::Approx(dense).epsilon(1e-6));
        }
    }

    TEST_CASE("nullspace dimensions and orthonormality")
    {
        CHECK(nullspace(DenseMatrix::Zero(3, 3), 1e-12).cols() == 3);

        DenseMatrix m(2, 3);
        m << 1, 0, 0, 0, 1, 0;
        const DenseMatrix k = nullspace(m, 1e-12);
        REQUIRE(k.cols() == 1);
        CHECK(std::abs(std::abs(k(2, 0)) - 1.0) <= 1e-12);

        std::mt19937 rng(2);
        std::normal_distribution<double> g;
        DenseMatrix u(4, 2), v(2, 6);
        for (int i = 0; i < u.size(); ++i)
            u.data()[i] = g(rng);
        for (int i = 0; i < v.size(); ++i)
            v.data()[i] = g(rng);
        const DenseMatrix r = u * v;
        const DenseMatrix kr = nullspace(r, 1e-10);
        REQUIRE(kr.cols() == 4);
        CHECK((r * kr).norm() <= 1e-12 * r.norm());
        CHECK((kr.transpose() * kr - DenseMatrix::Identity(4, 4)).norm() <= 1e-12);

        const SplitBasis s = kernel_split(r, 1e-10);
        CHECK(s.kernel.cols() + s.complement.cols() == 6);
        CHECK((s.kernel.transpose() * s.complement).norm() <= 1e-12);
    }
}
