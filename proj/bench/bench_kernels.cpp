// Serial reference vs OpenMP kernels, plus a Monte Carlo ensemble of the full
// pipeline. Run with OMP_NUM_THREADS to vary the thread count.

#include <benchmark/benchmark.h>

#include <vector>

#include "srsd/correlation.hpp"
#include "srsd/kernels.hpp"
#include "srsd/synthgen.hpp"

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
    srsd::synth::NormalStream z(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = z.next();
    return v;
}

template <auto Kernel>
void window_variances(benchmark::State& state) {
    const auto x = noise(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(x, 20));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void window_correlations(benchmark::State& state) {
    const auto x = noise(static_cast<std::size_t>(state.range(0)), 1);
    const auto y = noise(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(x, y, 21));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void lag1(benchmark::State& state) {
    const auto x = noise(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(x, 10));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void ensemble(benchmark::State& state, bool parallel) {
    const auto runs = static_cast<std::size_t>(state.range(0));
    const srsd::SrsdParams params{{0.05, 20, srsd::Prewhitening::none, 10}, {}, 0.9};
    std::vector<std::size_t> found(runs);
    auto body = [&](std::size_t k) {
        const auto [x, y] = srsd::synth::generate_pair(
            srsd::synth::synthetic_experiment_spec(srsd::synth::derive_seed(1, k)));
        found[k] = srsd::run_srsd(x, y, params).correlation.change_points.size();
    };
    for (auto _ : state) {
        if (parallel) {
            srsd::kernels::parallel::for_each_run(runs, body);
        } else {
            for (std::size_t k = 0; k < runs; ++k) body(k);
        }
        benchmark::DoNotOptimize(found.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

namespace serial = srsd::kernels::serial;
namespace parallel = srsd::kernels::parallel;

}  // namespace

BENCHMARK(window_variances<serial::window_variances>)->Name("window_variances/serial")->Range(1 << 10, 1 << 20);
BENCHMARK(window_variances<parallel::window_variances>)->Name("window_variances/omp")->Range(1 << 10, 1 << 20);
BENCHMARK(window_correlations<serial::window_correlations>)->Name("window_correlations/serial")->Range(1 << 10, 1 << 20);
BENCHMARK(window_correlations<parallel::window_correlations>)->Name("window_correlations/omp")->Range(1 << 10, 1 << 20);
BENCHMARK(lag1<serial::lag1_autocorrelations>)->Name("lag1/serial")->Range(1 << 10, 1 << 20);
BENCHMARK(lag1<parallel::lag1_autocorrelations>)->Name("lag1/omp")->Range(1 << 10, 1 << 20);
BENCHMARK_CAPTURE(ensemble, serial, false)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(ensemble, omp, true)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
