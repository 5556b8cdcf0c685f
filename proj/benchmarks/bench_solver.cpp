#include "conic/cli/catalog.hpp"
#include "conic/solver.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_SolveNegcurv(benchmark::State& state) {
    const auto g = conic::cli::catalog_metric("negcurv");
    const conic::RadialGrid grid(static_cast<std::size_t>(state.range(0)));
    const conic::YamabeContext ctx(g, grid);
    for (auto _ : state) benchmark::DoNotOptimize(conic::solve_yamabe(ctx));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveNegcurv)->RangeMultiplier(2)->Range(128, 4096)->Complexity()->Unit(benchmark::kMillisecond);

void BM_LinearSolve(benchmark::State& state) {
    const auto g = conic::cli::catalog_metric("negcurv");
    const conic::RadialGrid grid(static_cast<std::size_t>(state.range(0)));
    const conic::LinearSystem L(conic::laplacian_coefficients(g, grid), 13.0, conic::TipCondition::Natural);
    const std::vector<double> rhs(grid.size(), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(L.solve(rhs));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LinearSolve)->RangeMultiplier(4)->Range(128, 8192)->Complexity();

void BM_Barriers(benchmark::State& state) {
    const auto g = conic::cli::catalog_metric("negcurv");
    const conic::RadialGrid grid(static_cast<std::size_t>(state.range(0)));
    const conic::YamabeContext ctx(g, grid);
    for (auto _ : state) benchmark::DoNotOptimize(conic::build_barriers(ctx));
}
BENCHMARK(BM_Barriers)->Arg(512)->Arg(2048);

} // namespace

BENCHMARK_MAIN();
