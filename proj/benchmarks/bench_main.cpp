#include <benchmark/benchmark.h>

#include <cmdegkit/catalog.hpp>
#include <cmdegkit/cmdeg.hpp>
#include <cmdegkit/kernel.hpp>
#include <cmdegkit/polygamma.hpp>
#include <cmdegkit/series.hpp>

namespace {

const cmdegkit::EvalContext kCtx{};

void BM_polygamma_small_arg(benchmark::State& state) {
    const int n = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(cmdegkit::polygamma(n, 0.7, kCtx));
}
BENCHMARK(BM_polygamma_small_arg)->Arg(1)->Arg(4);

void BM_polygamma_large_arg(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(cmdegkit::polygamma(2, 37.5, kCtx));
}
BENCHMARK(BM_polygamma_large_arg);

void BM_subject_derivative(benchmark::State& state) {
    const int k = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            cmdegkit::catalog_deriv("Psi", k, 1.3, kCtx));
}
BENCHMARK(BM_subject_derivative)->Arg(0)->Arg(4)->Arg(10);

void BM_kernel_fourth_derivative(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(cmdegkit::q_deriv(4, 1.0, kCtx));
}
BENCHMARK(BM_kernel_fourth_derivative);

void BM_tail_sum_closed(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(cmdegkit::theta(1.7));
}
BENCHMARK(BM_tail_sum_closed);

void BM_tail_sum_series(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(cmdegkit::theta_series_sum(0.2, 60));
}
BENCHMARK(BM_tail_sum_series);

void BM_weighted_check(benchmark::State& state) {
    const cmdegkit::GridSpec grid{0.01, 100.0, 50, "log"};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            cmdegkit::cm_check("Psi", 4.0, 4, grid, kCtx));
}
BENCHMARK(BM_weighted_check);

void BM_transform_identity(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(cmdegkit::laplace_identity_check(2.0, kCtx));
}
BENCHMARK(BM_transform_identity);

} // namespace

BENCHMARK_MAIN();
