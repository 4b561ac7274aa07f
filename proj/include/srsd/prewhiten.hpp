#pragma once

#include <cstddef>
#include <string>

#include "srsd/core.hpp"

namespace srsd {

enum class Ar1Method { ols, mpk, ip4 };

struct Ar1Estimate {
    double alpha = 0.0;
    Ar1Method method = Ar1Method::ols;
    std::size_t m = 0;
    std::size_t n_subsamples = 0;
    bool clamped = false;

    friend bool operator==(const Ar1Estimate&, const Ar1Estimate&) = default;
};

/// Kendall-expansion inversion: (m * a + 1) / (m - 4).
double mpk_correct(double alpha_ols, std::size_t m);

/// Four inverse-proportional corrections: a_{k+1} = a_ols + (1 + 4 a_k) / m.
double ip4_correct(double alpha_ols, std::size_t m);

/// Median over every sliding subsample of length m of the bias-corrected
/// lag-1 estimate, clamped to [-0.99, 0.99].
Ar1Estimate estimate_ar1(const TimeSeries& series, std::size_t m, Ar1Method method);

/// x[i+1] - alpha * x[i]; length n - 1, labels of the later point kept.
TimeSeries prewhiten(const TimeSeries& series, double alpha);

std::string to_string(Ar1Method method);

}  // namespace srsd
