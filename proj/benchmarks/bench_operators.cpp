#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "fracsolve/frac_ops.hpp"
#include "fracsolve/thermistor.hpp"
#include "fracsolve/time_scale.hpp"
#include "fracsolve/volterra.hpp"

using namespace fracsolve;

namespace {

void BM_rl_integral(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto nodes = make_grid(1.0, {n, 2.0});
    const GridFn g = GridFn::sample(nodes, [](double t) { return std::sin(3.0 * t) + 2.0; });
    for (auto _ : state) {
        benchmark::DoNotOptimize(rl_integral(g, FracOrder(0.3)));
    }
    state.SetComplexityN(static_cast<int64_t>(n));
}
BENCHMARK(BM_rl_integral)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void BM_integrator_apply(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto nodes = make_grid(1.0, {n, 2.0});
    const GridFn g = GridFn::sample(nodes, [](double t) { return std::sin(3.0 * t) + 2.0; });
    const ProductIntegrator quad(nodes, FracOrder(0.3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(quad.apply(g.values()));
    }
    state.SetComplexityN(static_cast<int64_t>(n));
}
BENCHMARK(BM_integrator_apply)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void BM_rl_derivative(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto nodes = make_grid(1.0, {n, 2.0});
    const GridFn g = GridFn::sample(nodes, [](double t) { return std::exp(-t); });
    for (auto _ : state) {
        benchmark::DoNotOptimize(rl_derivative(g, FracOrder(0.5)));
    }
}
BENCHMARK(BM_rl_derivative)->Arg(1024)->Arg(2048);

void BM_picard_mittag_leffler(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    VolterraProblem p{FracOrder(0.5), 1.0, 1.0, [](double, double u) { return u; },
                      GridPolicy{n, 2.0}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(picard_solve(p, 1e-10, 100));
    }
}
BENCHMARK(BM_picard_mittag_leffler)->Arg(512)->Arg(1024);

void BM_solve_rl_sigmoid(benchmark::State& state) {
    RLSpec spec;
    spec.alpha = 0.25;
    spec.T = 1.0;
    spec.f = [](double u) { return 1.0 + 1.0 / (1.0 + u * u); };
    spec.c1 = 1.0;
    spec.c2 = 2.0;
    spec.Lf = 0.6495;
    spec.grid = GridPolicy{static_cast<std::size_t>(state.range(0)), 2.0};
    spec.lambda = 0.9 * uniqueness_threshold_rl(spec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_rl(spec, 1e-10, 200));
    }
}
BENCHMARK(BM_solve_rl_sigmoid)->Arg(512)->Arg(1024);

void BM_ts_frac_integral(benchmark::State& state) {
    const TimeScale scale({Segment{0.0, 0.4}, Segment{0.6, 0.6}, Segment{0.7, 1.0}});
    const TsGridFn g = TsGridFn::sample(scale, {static_cast<std::size_t>(state.range(0)), 1.0},
                                        [](double t) { return 1.0 + t; });
    for (auto _ : state) {
        benchmark::DoNotOptimize(ts_frac_integral(g, FracOrder(0.5), 0.0, 1.0));
    }
}
BENCHMARK(BM_ts_frac_integral)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
