#pragma once

// Data-parallel inner loops. Every kernel has a plain serial reference in
// kernels::serial and an OpenMP version in kernels::parallel that must agree
// with it to rounding (tests/test_kernels.cpp, bench/bench_kernels.cpp).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace srsd::kernels {

namespace serial {

/// Sample variance (denominator window - 1) of each contiguous window.
std::vector<double> window_variances(std::span<const double> x, std::size_t window);

/// Pearson correlation of each contiguous window of the pair.
std::vector<double> window_correlations(std::span<const double> x, std::span<const double> y,
                                        std::size_t window);

/// Lag-1 autocorrelation of each contiguous subsample of length m.
std::vector<double> lag1_autocorrelations(std::span<const double> x, std::size_t m);

}  // namespace serial

namespace parallel {

std::vector<double> window_variances(std::span<const double> x, std::size_t window);
std::vector<double> window_correlations(std::span<const double> x, std::span<const double> y,
                                        std::size_t window);
std::vector<double> lag1_autocorrelations(std::span<const double> x, std::size_t m);

/// Runs body(run) for run in [0, runs), one run per OpenMP iteration.
/// body must only touch state owned by its run.
template <typename Body>
void for_each_run(std::size_t runs, Body&& body) {
    const auto n = static_cast<std::int64_t>(runs);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t run = 0; run < n; ++run) {
        body(static_cast<std::size_t>(run));
    }
}

}  // namespace parallel

/// Lag-1 autocorrelation of one subsample: sum of lagged products of
/// deviations from the subsample mean over the sum of squared deviations.
double lag1_autocorrelation(std::span<const double> x);

}  // namespace srsd::kernels
