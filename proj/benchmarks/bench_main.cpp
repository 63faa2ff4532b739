#include <benchmark/benchmark.h>

#include <cmath>

#include "fracground/extension.hpp"
#include "fracground/model.hpp"
#include "fracground/solver.hpp"
#include "fracground/spectral.hpp"

using namespace fracground;

namespace {

Field gaussian(const Grid& g) {
    return Field::sample(g, [&](const std::array<double, 3>& x) {
        double r2 = 0.0;
        for (int d = 0; d < g.dim; ++d) r2 += x[d] * x[d];
        return std::exp(-r2 / 2.0);
    });
}

void BM_fractional_laplacian_1d(benchmark::State& state) {
    Grid g(1, static_cast<int>(state.range(0)), 15.0);
    Field u = gaussian(g);
    for (auto _ : state)
        benchmark::DoNotOptimize(fractional_laplacian(u, 0.4));
}
BENCHMARK(BM_fractional_laplacian_1d)->Arg(512)->Arg(4096)->Arg(16384);

void BM_fractional_laplacian_2d(benchmark::State& state) {
    Grid g(2, static_cast<int>(state.range(0)), 10.0);
    Field u = gaussian(g);
    for (auto _ : state)
        benchmark::DoNotOptimize(fractional_laplacian(u, 0.5));
}
BENCHMARK(BM_fractional_laplacian_2d)->Arg(128)->Arg(256);

void BM_dnorm(benchmark::State& state) {
    Grid g(1, static_cast<int>(state.range(0)), 15.0);
    Field u = gaussian(g);
    for (auto _ : state) benchmark::DoNotOptimize(dnorm_sq(u, 0.4));
}
BENCHMARK(BM_dnorm)->Arg(4096)->Arg(16384);

void BM_dealiased_gradient(benchmark::State& state) {
    Grid g(1, static_cast<int>(state.range(0)), 15.0);
    ModelParams p(1.0, 0.4, 1, 20.0, 4.0);
    Nonlinearity nl = canonical_f(p);
    Field u = gaussian(g);
    for (auto _ : state) benchmark::DoNotOptimize(gradient(u, p, nl));
}
BENCHMARK(BM_dealiased_gradient)->Arg(512)->Arg(4096);

void BM_poisson_extend(benchmark::State& state) {
    Grid g(1, static_cast<int>(state.range(0)), 15.0);
    Field u = gaussian(g);
    for (auto _ : state)
        benchmark::DoNotOptimize(poisson_extend(u, 0.5, 0.4));
}
BENCHMARK(BM_poisson_extend)->Arg(256)->Arg(512);

void BM_solve_1d(benchmark::State& state) {
    SolveConfig cfg{ModelParams(1.0, 0.4, 1, 20.0, 4.0),
                    Grid(1, static_cast<int>(state.range(0)), 15.0),
                    {}};
    for (auto _ : state) benchmark::DoNotOptimize(minimize_reduced(cfg));
}
BENCHMARK(BM_solve_1d)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
