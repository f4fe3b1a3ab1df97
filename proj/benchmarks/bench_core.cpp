#include <benchmark/benchmark.h>

#include <cmath>

#include "helical/dynamics.hpp"
#include "helical/elliptic.hpp"
#include "helical/grid.hpp"

using namespace helical;

namespace {

ScalarField2D offset_gaussian(std::shared_ptr<const GridDomain> d) {
    return ScalarField2D::sample(
        d, [](double x, double y) { return std::exp(-((x - 0.3) * (x - 0.3) + y * y) / 0.04); });
}

void BM_Assemble(benchmark::State& state) {
    const auto d = build_disk_domain(1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(assemble(d, HelixParams(1.0)));
    state.counters["unknowns"] = static_cast<double>(d->interior_count());
}

void BM_Solve(benchmark::State& state) {
    const auto d = build_disk_domain(1.0, static_cast<int>(state.range(0)));
    const DiscreteOperator op = assemble(d, HelixParams(1.0));
    const ScalarField2D omega = offset_gaussian(d);
    int iterations = 0;
    for (auto _ : state) {
        const SolveResult r = solve(op, omega);
        iterations = r.report.iterations;
        benchmark::DoNotOptimize(r.psi.values().data());
    }
    state.counters["cg_iterations"] = iterations;
}

void BM_Step(benchmark::State& state) {
    const auto d = build_disk_domain(1.0, static_cast<int>(state.range(0)));
    const DiscreteOperator op = assemble(d, HelixParams(1.0));
    const SolverSettings solver;
    const SimState s0 = initial_state(op, offset_gaussian(d), solver);
    for (auto _ : state) {
        SimState s = step(s0, 1.0 / 256.0, ForcingSpec::zero(), op, solver);
        benchmark::DoNotOptimize(s.omega.values().data());
    }
}

void BM_CubicInterpolation(benchmark::State& state) {
    const auto d = build_disk_domain(1.0, 128);
    const ScalarField2D f = offset_gaussian(d);
    double x = -0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(interpolate_cubic_monotone(f, x, 0.37 * x));
        x = x > 0.5 ? -0.5 : x + 1e-3;
    }
}

}  // namespace

BENCHMARK(BM_Assemble)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Solve)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Step)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CubicInterpolation);

BENCHMARK_MAIN();
