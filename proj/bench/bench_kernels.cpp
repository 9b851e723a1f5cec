#include "gaussn/kernels.hpp"
#include "gaussn/models.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace gaussn;

namespace {

void log_likelihood(benchmark::State& state, bool parallel) {
    const auto m = ModelSpec::make(ModelId::TrigTranslational);
    const auto obs = sample(m, 0.2, static_cast<std::size_t>(state.range(0)), 1);
    const auto grid = kernels::linspace(-1.5, 1.5, 4096);
    for (auto _ : state) {
        auto out = parallel ? kernels::log_likelihood_grid_omp(m, obs.values, grid)
                            : kernels::log_likelihood_grid_serial(m, obs.values, grid);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<int64_t>(grid.size()));
}

void max_scan(benchmark::State& state, bool parallel) {
    auto f = [](double d) { return 8.0 * std::cos(2.0 * d + 1.5 * 3.141592653589793); };
    const auto points = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto r = parallel ? kernels::max_abs_scan_omp(f, -1.0, 1.0, points)
                          : kernels::max_abs_scan_serial(f, -1.0, 1.0, points);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(log_likelihood, serial, false)->Arg(8)->Arg(160)->Arg(640);
BENCHMARK_CAPTURE(log_likelihood, omp, true)->Arg(8)->Arg(160)->Arg(640);
BENCHMARK_CAPTURE(max_scan, serial, false)->Arg(10000)->Arg(1000000);
BENCHMARK_CAPTURE(max_scan, omp, true)->Arg(10000)->Arg(1000000);

BENCHMARK_MAIN();
