#include "approxc1/experiments.hpp"

#include "approxc1/c0space.hpp"
#include "approxc1/c1space.hpp"
#include "approxc1/error.hpp"
#include "approxc1/fixtures.hpp"
#include "approxc1/manufactured.hpp"
#include "approxc1/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace approxc1 {

namespace {

std::string fmt(double x)
{
    if (!std::isfinite(x))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", x);
    return buf;
}

bool is_builtin(const std::string& name)
{
    const auto names = builtin_geometry_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

LevelResult failed(int n, const std::string& status)
{
    LevelResult r;
    r.n = n;
    r.ok = false;
    r.status = status;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.errors.h = 1.0 / n;
    r.errors.l2 = r.errors.h1 = r.errors.h2 = nan;
    return r;
}

} // namespace

void ExperimentConfig::validate() const
{
    if (p < 2)
        throw ParameterError("p must be at least 2");
    const int rr = regularity();
    if (rr < 1 || rr > p - 1)
        throw ParameterError("r must satisfy 1 <= r <= p - 1");
    if (levels.empty())
        throw ParameterError("at least one level is required");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 1)
            throw ParameterError("levels must be positive");
        if (i > 0 && levels[i] <= levels[i - 1])
            throw ParameterError("levels must be strictly increasing");
    }
    if (!(eta_mult > 0.0))
        throw ParameterError("eta multiplier must be positive");
    if (n0 < 1)
        throw ParameterError("h0 must be 1/n0 for a positive integer n0");
}

std::shared_ptr<const Topology> load_topology(const ExperimentConfig& cfg)
{
    std::vector<Patch> patches =
        is_builtin(cfg.geometry) ? builtin_geometry(cfg.geometry) : load_geometry(cfg.geometry);
    return std::make_shared<const Topology>(detect_topology(std::move(patches)));
}

Problem cosine_problem()
{
    return problem_from(cosine_solution(), true);
}

LevelResult solve_level(const ExperimentConfig& cfg, std::shared_ptr<const Topology> topo, int n,
                        const std::vector<double>* eta)
{
    const int r = cfg.regularity();
    const BcType type = cfg.bc ? *cfg.bc : default_bc(cfg.geometry);
    const BcSpec bc = uniform_bc(*topo, type);
    AssemblyOptions opts;
    opts.parallel = cfg.parallel;
    const Problem problem = cosine_problem();

    LevelResult res;
    res.n = n;
    try {
        DiscreteSpace space;
        AssembledSystem sys;
        if (cfg.method == Method::ApproxC1) {
            space = homogeneous_subspace(build_approx_c1_space(topo, cfg.p, r, n), bc);
            sys = assemble_approx_c1(space, problem, bc, opts);
        } else {
            space = c0_homogeneous_subspace(build_c0_space(topo, cfg.p, r, n), bc);
            res.eta = eta ? *eta : stability_parameters(*topo, cfg.p, r, cfg.n0, cfg.eta_mult, opts);
            sys = assemble_nitsche(space, problem, bc, res.eta, opts);
        }
        const Eigen::VectorXd x = solve_system(sys);
        res.errors = error_norms(space, x, cosine_jet);
    } catch (const IndefiniteError& e) {
        LevelResult f = failed(n, "indefinite");
        f.eta = res.eta;
        return f;
    } catch (const NumericalError& e) {
        LevelResult f = failed(n, "numerical-failure");
        f.eta = res.eta;
        return f;
    }
    return res;
}

ConvergenceTable run_convergence(const ExperimentConfig& cfg)
{
    cfg.validate();
    const auto topo = load_topology(cfg);
    ConvergenceTable table;
    table.interfaces = topo->interfaces.size();
    std::vector<double> eta;
    if (cfg.method == Method::Nitsche) {
        AssemblyOptions opts;
        opts.parallel = cfg.parallel;
        eta = stability_parameters(*topo, cfg.p, cfg.regularity(), cfg.n0, cfg.eta_mult, opts);
    }
    for (int n : cfg.levels)
        table.rows.push_back(solve_level(cfg, topo, n, cfg.method == Method::Nitsche ? &eta : nullptr));
    return table;
}

std::vector<SweepRow> run_eta_sweep(const ExperimentConfig& cfg, const std::vector<double>& factors)
{
    cfg.validate();
    const auto topo = load_topology(cfg);
    ExperimentConfig c = cfg;
    c.method = Method::Nitsche;
    AssemblyOptions opts;
    opts.parallel = cfg.parallel;
    const std::vector<double> base = stability_parameters(*topo, c.p, c.regularity(), c.n0, c.eta_mult, opts);
    const double chosen = base.empty() ? 1.0 : *std::max_element(base.begin(), base.end());
    std::vector<SweepRow> rows;
    for (double f : factors) {
        const std::vector<double> eta(base.size(), f * chosen);
        rows.push_back({f, solve_level(c, topo, c.n0, &eta)});
    }
    return rows;
}

double observed_rate(double coarse, double fine)
{
    return std::log2(coarse / fine);
}

double fitted_rate(const std::vector<double>& h, const std::vector<double>& e)
{
    if (h.size() != e.size() || h.size() < 2)
        throw ParameterError("fitted_rate: need at least two matching samples");
    const int m = static_cast<int>(h.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < m; ++i) {
        const double x = std::log(h[i]), y = std::log(e[i]);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::string convergence_csv(const ConvergenceTable& t)
{
    std::string s = "n,h,dofs,l2,h1,h2";
    for (std::size_t i = 0; i < t.interfaces; ++i)
        s += ",jump_" + std::to_string(i);
    s += ",rate_l2,rate_h1,rate_h2,status\n";
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
        const LevelResult& r = t.rows[k];
        const ErrorReport& e = r.errors;
        s += std::to_string(r.n) + "," + fmt(e.h) + "," + std::to_string(e.dofs) + "," + fmt(e.l2) + "," +
             fmt(e.h1) + "," + fmt(e.h2);
        for (std::size_t i = 0; i < t.interfaces; ++i)
            s += "," + (i < e.jumps.size() ? fmt(e.jumps[i]) : std::string("nan"));
        if (k == 0) {
            s += ",,,";
        } else {
            const ErrorReport& c = t.rows[k - 1].errors;
            s += "," + fmt(observed_rate(c.l2, e.l2)) + "," + fmt(observed_rate(c.h1, e.h1)) + "," +
                 fmt(observed_rate(c.h2, e.h2));
        }
        s += "," + r.status + "\n";
    }
    return s;
}

std::string sweep_csv(const std::vector<SweepRow>& rows)
{
    std::string s = "factor,eta,l2,h1,h2,status\n";
    for (const SweepRow& r : rows) {
        const double eta = r.result.eta.empty() ? 0.0 : r.result.eta.front();
        s += fmt(r.factor) + "," + fmt(eta) + "," + fmt(r.result.errors.l2) + "," + fmt(r.result.errors.h1) +
             "," + fmt(r.result.errors.h2) + "," + r.result.status + "\n";
    }
    return s;
}

std::string jump_csv(const ConvergenceTable& t)
{
    std::string s = "n,h";
    for (std::size_t i = 0; i < t.interfaces; ++i)
        s += ",jump_" + std::to_string(i) + ",rate_" + std::to_string(i);
    s += "\n";
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
        const ErrorReport& e = t.rows[k].errors;
        s += std::to_string(t.rows[k].n) + "," + fmt(e.h);
        for (std::size_t i = 0; i < t.interfaces; ++i) {
            const double j = i < e.jumps.size() ? e.jumps[i] : std::nan("");
            s += "," + fmt(j) + ",";
            if (k > 0 && i < t.rows[k - 1].errors.jumps.size())
                s += fmt(observed_rate(t.rows[k - 1].errors.jumps[i], j));
        }
        s += "\n";
    }
    return s;
}

} // namespace approxc1
