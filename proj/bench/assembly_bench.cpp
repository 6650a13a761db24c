// Serial reference loop against the OpenMP element loop.
#include "approxc1/assembly.hpp"
#include "approxc1/c0space.hpp"
#include "approxc1/c1space.hpp"
#include "approxc1/experiments.hpp"
#include "approxc1/fixtures.hpp"

#include <benchmark/benchmark.h>

using namespace approxc1;

namespace {

std::shared_ptr<const Topology> fixture()
{
    static const auto t = std::make_shared<const Topology>(detect_topology(builtin_geometry("square-6-bicubic")));
    return t;
}

void approx_c1(benchmark::State& state, bool parallel)
{
    const auto t = fixture();
    const BcSpec bc = uniform_bc(*t, BcType::Laplace);
    const DiscreteSpace s = homogeneous_subspace(build_approx_c1_space(t, 3, 2, static_cast<int>(state.range(0))), bc);
    AssemblyOptions opts;
    opts.parallel = parallel;
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble_approx_c1(s, cosine_problem(), bc, opts).stiffness.nonZeros());
    state.counters["dofs"] = s.size();
}

void nitsche(benchmark::State& state, bool parallel)
{
    const auto t = fixture();
    const BcSpec bc = uniform_bc(*t, BcType::Laplace);
    const DiscreteSpace s = c0_homogeneous_subspace(build_c0_space(t, 3, 2, static_cast<int>(state.range(0))), bc);
    const std::vector<double> eta(t->interfaces.size(), 100.0);
    AssemblyOptions opts;
    opts.parallel = parallel;
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble_nitsche(s, cosine_problem(), bc, eta, opts).stiffness.nonZeros());
    state.counters["dofs"] = s.size();
}

} // namespace

BENCHMARK_CAPTURE(approx_c1, serial, false)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(approx_c1, parallel, true)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(nitsche, serial, false)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(nitsche, parallel, true)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
