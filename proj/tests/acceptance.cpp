// Acceptance runner: one PASS/FAIL line per criterion. Tolerances are pinned
// below; `acceptance N` runs criterion N only.
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include "approxc1/assembly.hpp"
#include "approxc1/c0space.hpp"
#include "approxc1/c1space.hpp"
#include "approxc1/error.hpp"
#include "approxc1/experiments.hpp"
#include "approxc1/fixtures.hpp"
#include "approxc1/norms.hpp"
#include "approxc1/stability.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <tuple>
#include <vector>

using namespace approxc1;

namespace {

constexpr double kRateLow[3] = {0.4, 0.3, 0.3};  // L2, H1, H2 below the optimal order
constexpr double kRateHigh[3] = {0.4, 0.4, 0.4}; // and above
constexpr double kParityFactor = 5.0;
constexpr double kExactJump = 1e-10;
constexpr double kJumpRate = 2.7;
constexpr double kLockingFactor = 3.0;
constexpr double kSweepMatch = 1e-12;
constexpr double kStabilitySpread = 0.25;
constexpr double kConvergenceSeconds = 600.0;
constexpr double kPropertySeconds = 120.0;

const std::vector<int> kLevels{4, 8, 16, 32};

struct Verdict {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why)
    {
        pass = false;
        detail += (detail.empty() ? "" : "; ") + why;
    }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string num(double x, const char* f = "%.3g")
{
    char b[64];
    std::snprintf(b, sizeof b, f, x);
    return b;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Convergence tables are shared between criteria 1, 2, 4 and 6.
const ConvergenceTable& table(const std::string& geo, Method m, int p, double* seconds = nullptr)
{
    static std::map<std::tuple<std::string, Method, int>, std::pair<ConvergenceTable, double>> cache;
    const auto key = std::make_tuple(geo, m, p);
    auto it = cache.find(key);
    if (it == cache.end()) {
        ExperimentConfig cfg;
        cfg.geometry = geo;
        cfg.method = m;
        cfg.p = p;
        cfg.levels = kLevels;
        const auto t0 = std::chrono::steady_clock::now();
        ConvergenceTable t = run_convergence(cfg);
        it = cache.emplace(key, std::make_pair(std::move(t), seconds_since(t0))).first;
    }
    if (seconds)
        *seconds = it->second.second;
    return it->second.first;
}

const char* method_name(Method m)
{
    return m == Method::ApproxC1 ? "approx-c1" : "nitsche";
}

// Rate bands on the final step; the average over the two finest steps is
// reported alongside.
void check_rates(const std::string& geo, Method m, int p, Verdict& v)
{
    double secs = 0.0;
    const ConvergenceTable& t = table(geo, m, p, &secs);
    const std::string tag = geo + " " + method_name(m) + " p=" + std::to_string(p);
    for (const auto& r : t.rows)
        if (!r.ok)
            return v.fail(tag + " n=" + std::to_string(r.n) + " " + r.status);
    const std::size_t k = t.rows.size() - 1;
    const ErrorReport& c = t.rows[k - 1].errors;
    const ErrorReport& f = t.rows[k].errors;
    const ErrorReport& cc = t.rows[k - 2].errors;
    const double last[3] = {observed_rate(c.l2, f.l2), observed_rate(c.h1, f.h1), observed_rate(c.h2, f.h2)};
    const double avg[3] = {0.5 * observed_rate(cc.l2, f.l2), 0.5 * observed_rate(cc.h1, f.h1),
                           0.5 * observed_rate(cc.h2, f.h2)};
    const char* names[3] = {"L2", "H1", "H2"};
    std::string rates;
    for (int i = 0; i < 3; ++i) {
        const double opt = p + 1 - i;
        rates += std::string(" ") + names[i] + "=" + num(last[i], "%.2f") + "(" + num(avg[i], "%.2f") + ")";
        if (last[i] < opt - kRateLow[i] || last[i] > opt + kRateHigh[i])
            v.fail(tag + " " + names[i] + " rate " + num(last[i], "%.2f") + " outside [" +
                   num(opt - kRateLow[i], "%.1f") + ", " + num(opt + kRateHigh[i], "%.1f") + "]");
    }
    if (secs > kConvergenceSeconds)
        v.fail(tag + " took " + num(secs) + " s");
    v.note(tag + rates + " " + num(secs, "%.1f") + "s");
}

Verdict criterion1()
{
    Verdict v;
    for (const std::string geo : {"square-6-bilinear", "square-2-bicubic"})
        for (int p : {3, 4})
            check_rates(geo, Method::ApproxC1, p, v);
    return v;
}

Verdict criterion2()
{
    Verdict v;
    for (const std::string geo : {"square-6-bilinear", "square-2-bicubic"})
        for (int p : {3, 4}) {
            check_rates(geo, Method::Nitsche, p, v);
            const auto& a = table(geo, Method::ApproxC1, p).rows;
            const auto& b = table(geo, Method::Nitsche, p).rows;
            double worst = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i)
                for (auto [x, y] : {std::pair{a[i].errors.h1, b[i].errors.h1}, std::pair{a[i].errors.h2, b[i].errors.h2}})
                    worst = std::max(worst, std::max(x / y, y / x));
            if (worst > kParityFactor)
                v.fail(geo + " p=" + std::to_string(p) + " error ratio " + num(worst));
            v.note(geo + " p=" + std::to_string(p) + " max ratio " + num(worst, "%.2f"));
        }
    return v;
}

Verdict criterion3()
{
    Verdict v;
    const auto topo = std::make_shared<const Topology>(detect_topology(builtin_geometry("square-6-bilinear")));
    double basis = 0.0;
    for (int p : {3, 4})
        for (int n : {4, 8}) {
            const DiscreteSpace s = build_approx_c1_space(topo, p, p - 1, n);
            for (int d = 0; d < s.size(); ++d)
                for (double j : jump_norms(s, Eigen::VectorXd::Unit(s.size(), d)))
                    basis = std::max(basis, j);
        }
    double sol = 0.0;
    for (int p : {3, 4})
        for (const auto& r : table("square-6-bilinear", Method::ApproxC1, p).rows)
            for (double j : r.errors.jumps)
                sol = std::max(sol, j);
    if (basis > kExactJump)
        v.fail("basis jump " + num(basis));
    if (sol > kExactJump)
        v.fail("solution jump " + num(sol));
    v.note("max basis jump " + num(basis) + ", max solution jump " + num(sol));
    return v;
}

Verdict criterion4()
{
    Verdict v;
    const auto& rows = table("square-2-bicubic", Method::ApproxC1, 3).rows;
    std::vector<double> h, e;
    for (std::size_t k = rows.size() - 3; k < rows.size(); ++k) {
        h.push_back(rows[k].errors.h);
        e.push_back(rows[k].errors.jumps.at(0));
    }
    const double rate = fitted_rate(h, e);
    if (!(rate >= kJumpRate))
        v.fail("jump rate " + num(rate, "%.2f"));
    v.note("jump rate " + num(rate, "%.2f") + " over n=8,16,32");
    return v;
}

Verdict criterion5()
{
    Verdict v;
    const auto topo = std::make_shared<const Topology>(detect_topology(builtin_geometry("square-2-bicubic")));
    const BcSpec bc = uniform_bc(*topo, default_bc("square-2-bicubic"));
    for (int n : {4, 8}) {
        const double h = 1.0 / n;
        const double c = estimate_stability_constant(*topo, 0, 3, 2, n);
        const DiscreteSpace s = c0_homogeneous_subspace(build_c0_space(topo, 3, 2, n), bc);
        const auto good = assemble_nitsche(s, cosine_problem(), bc, {32.0 * h * c});
        const double lmin = eigen_extreme(good.stiffness, SparseMatrix(), Extreme::Min).value;
        if (!(lmin > 0.0))
            v.fail("n=" + std::to_string(n) + " min eigenvalue " + num(lmin));
        const Eigen::VectorXd xg = solve_system(good);
        const double stable = error_norms(s, xg, cosine_jet).h2;

        const auto bad = assemble_nitsche(s, cosine_problem(), bc, {1e-3 * h * c});
        std::string outcome;
        try {
            const double e = error_norms(s, solve_system(bad), cosine_jet).h2;
            outcome = "H2 ratio " + num(e / stable);
            if (e < 10.0 * stable)
                v.fail("n=" + std::to_string(n) + " small eta neither indefinite nor inaccurate");
        } catch (const IndefiniteError&) {
            outcome = "indefinite";
        }
        v.note("n=" + std::to_string(n) + " lambda_min " + num(lmin) + ", small eta " + outcome);
    }
    return v;
}

Verdict criterion6()
{
    Verdict v;
    ExperimentConfig cfg;
    cfg.geometry = "square-2-bicubic";
    cfg.method = Method::Nitsche;
    cfg.p = 3;
    const auto rows = run_eta_sweep(cfg, {1.0, 1e4});
    for (const auto& r : rows)
        if (!r.result.ok)
            v.fail("factor " + num(r.factor) + " " + r.result.status);
    if (!v.pass)
        return v;
    const double chosen = rows[0].result.errors.h2, locked = rows[1].result.errors.h2;
    if (locked < kLockingFactor * chosen)
        v.fail("locking ratio " + num(locked / chosen));
    double ref = -1.0;
    for (const auto& r : table(cfg.geometry, Method::Nitsche, cfg.p).rows)
        if (r.n == cfg.n0)
            ref = r.errors.h2;
    const double mismatch = std::abs(ref - chosen) / ref;
    if (!(mismatch <= kSweepMatch))
        v.fail("chosen-eta error differs from the convergence run by " + num(mismatch));
    v.note("H2 " + num(chosen) + " -> " + num(locked) + " (x" + num(locked / chosen, "%.1f") + "), match " +
           num(mismatch));
    return v;
}

Verdict criterion7()
{
    Verdict v;
    const Topology topo = detect_topology(builtin_geometry("square-2-bicubic"));
    std::vector<double> hc;
    std::string s;
    for (int n : {4, 8, 16}) {
        hc.push_back(estimate_stability_constant(topo, 0, 3, 2, n) / n);
        s += " " + num(hc.back(), "%.3f");
    }
    const auto [lo, hi] = std::minmax_element(hc.begin(), hc.end());
    const double spread = *hi / *lo - 1.0;
    if (!(spread < kStabilitySpread))
        v.fail("spread " + num(100 * spread, "%.0f") + "%");
    v.note("h*c(h) at n=4,8,16:" + s);
    return v;
}

// Criteria 8 and 9 run the named doctest suites linked into this binary.
Verdict run_suites(const std::string& suites, const std::string& cases, double limit)
{
    Verdict v;
    doctest::Context ctx;
    ctx.setOption("test-suite", suites.c_str());
    if (!cases.empty())
        ctx.setOption("test-case", cases.c_str());
    ctx.setOption("minimal", true);
    const auto t0 = std::chrono::steady_clock::now();
    const int rc = ctx.run();
    const double secs = seconds_since(t0);
    if (rc != 0)
        v.fail("suite failures");
    if (secs > limit)
        v.fail("took " + num(secs) + " s");
    v.note(suites + " in " + num(secs, "%.1f") + "s");
    return v;
}

Verdict criterion8()
{
    return run_suites("spline,geometry,linalg,manufactured", "", kPropertySeconds);
}

Verdict criterion9()
{
    return run_suites("c1space", "*dof counts*,*dual*,*full rank*", kPropertySeconds);
}

} // namespace

int main(int argc, char** argv)
{
    using Fn = Verdict (*)();
    const Fn all[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                      criterion6, criterion7, criterion8, criterion9};
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        const int k = std::atoi(argv[i]);
        if (k < 1 || k > 9) {
            std::fprintf(stderr, "usage: %s [criterion 1-9 ...]\n", argv[0]);
            return 2;
        }
        which.push_back(k);
    }
    if (which.empty())
        for (int k = 1; k <= 9; ++k)
            which.push_back(k);

    int failed = 0;
    for (int k : which) {
        Verdict v;
        try {
            v = all[k - 1]();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        std::printf("criterion %d: %s  %s\n", k, v.pass ? "PASS" : "FAIL", v.detail.c_str());
        std::fflush(stdout);
        failed += !v.pass;
    }
    return failed == 0 ? 0 : 1;
}
