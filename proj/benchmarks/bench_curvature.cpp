#include "conic/cli/catalog.hpp"
#include "conic/curvature_fd.hpp"
#include "conic/functionals.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_CurvatureWarped(benchmark::State& state) {
    const auto g = conic::cli::catalog_metric("negcurv");
    const conic::RadialGrid grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(conic::curvature_profile(g, grid));
}
BENCHMARK(BM_CurvatureWarped)->Arg(512)->Arg(4096);

void BM_CurvatureFd(benchmark::State& state) {
    const auto g = conic::cli::catalog_metric("negcurv", static_cast<int>(state.range(1)));
    const conic::RadialGrid grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(conic::scalar_curvature_fd(g, grid));
}
BENCHMARK(BM_CurvatureFd)->Args({128, 2})->Args({512, 2})->Args({128, 3})->Unit(benchmark::kMillisecond);

void BM_YamabeEstimate(benchmark::State& state) {
    const auto g = conic::cli::catalog_metric("negcurv");
    const conic::RadialGrid grid(512);
    const conic::YamabeContext ctx(g, grid);
    const auto family = conic::bump_family({-0.5, 0.0, 0.5, 1.0, 1.5, 2.0});
    for (auto _ : state) benchmark::DoNotOptimize(conic::conic_yamabe_estimate(ctx, family));
}
BENCHMARK(BM_YamabeEstimate)->Unit(benchmark::kMillisecond);

} // namespace
