// Command-line driver for the biharmonic experiments.
#include "approxc1/error.hpp"
#include "approxc1/experiments.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

using namespace approxc1;

namespace {

struct Options {
    std::string geometry = "square-6-bilinear";
    std::string method = "approx-c1";
    int p = 3;
    int r = -1;
    std::vector<int> levels{4, 8, 16, 32};
    double eta_mult = 4.0;
    double h0 = 0.0625;
    std::string bc;
    std::string out;
    bool serial = false;
    std::vector<double> factors{1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3, 1e4};
};

ExperimentConfig make_config(const Options& o)
{
    ExperimentConfig c;
    c.geometry = o.geometry;
    if (o.method == "approx-c1")
        c.method = Method::ApproxC1;
    else if (o.method == "nitsche")
        c.method = Method::Nitsche;
    else
        throw ParameterError("--method must be approx-c1 or nitsche");
    c.p = o.p;
    c.r = o.r;
    c.levels = o.levels;
    c.eta_mult = o.eta_mult;
    if (!(o.h0 > 0.0))
        throw ParameterError("--h0 must be positive");
    const double n0 = 1.0 / o.h0;
    if (std::abs(n0 - std::round(n0)) > 1e-9 * n0)
        throw ParameterError("--h0 must be 1/n for an integer n");
    c.n0 = static_cast<int>(std::round(n0));
    if (o.bc == "gn")
        c.bc = BcType::Neumann;
    else if (o.bc == "gl")
        c.bc = BcType::Laplace;
    else if (!o.bc.empty())
        throw ParameterError("--bc must be gn or gl");
    c.parallel = !o.serial;
    c.validate();
    return c;
}

void emit(const std::string& csv, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << csv;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw ParameterError("cannot write " + path);
    out << csv;
}

bool all_ok(const ConvergenceTable& t)
{
    for (const auto& r : t.rows)
        if (!r.ok)
            return false;
    return true;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multi-patch biharmonic solver: approximate C1 and Nitsche methods"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--geometry", o.geometry, "builtin fixture name or geometry JSON path");
        sub->add_option("--method", o.method, "approx-c1 or nitsche");
        sub->add_option("--p", o.p, "spline degree");
        sub->add_option("--r", o.r, "spline regularity (default p-1)");
        sub->add_option("--levels", o.levels, "elements per direction, e.g. 4,8,16,32")->delimiter(',');
        sub->add_option("--eta-mult", o.eta_mult, "eta = mult * c(h0) / h0");
        sub->add_option("--h0", o.h0, "mesh size where c(h0) is computed");
        sub->add_option("--bc", o.bc, "gn or gl on every boundary edge (default by fixture)");
        sub->add_option("--out", o.out, "output CSV path (default stdout)");
        sub->add_flag("--serial", o.serial, "use the serial reference assembly");
    };
    auto* solve = app.add_subcommand("solve", "solve at the finest level and report errors");
    auto* converge = app.add_subcommand("converge", "convergence table over the levels");
    auto* sweep = app.add_subcommand("sweep-eta", "Nitsche error against eta at h0");
    auto* jump = app.add_subcommand("jump", "normal-derivative jumps of the approximate C1 solution");
    for (auto* s : {solve, converge, sweep, jump})
        add_common(s);
    sweep->add_option("--factors", o.factors, "multiples of the chosen eta")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        ExperimentConfig cfg = make_config(o);
        if (solve->parsed()) {
            cfg.levels = {cfg.levels.back()};
            const ConvergenceTable t = run_convergence(cfg);
            emit(convergence_csv(t), o.out);
            return all_ok(t) ? 0 : 3;
        }
        if (converge->parsed()) {
            const ConvergenceTable t = run_convergence(cfg);
            emit(convergence_csv(t), o.out);
            return all_ok(t) ? 0 : 3;
        }
        if (sweep->parsed()) {
            emit(sweep_csv(run_eta_sweep(cfg, o.factors)), o.out);
            return 0;
        }
        cfg.method = Method::ApproxC1;
        const ConvergenceTable t = run_convergence(cfg);
        emit(jump_csv(t), o.out);
        return all_ok(t) ? 0 : 3;
    } catch (const ParameterError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const DegenerateGeometryError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const ConformityError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const NonManifoldError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}
