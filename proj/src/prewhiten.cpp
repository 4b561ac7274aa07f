#include "srsd/prewhiten.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "srsd/kernels.hpp"

namespace srsd {

namespace {
constexpr double alpha_limit = 0.99;
}

double mpk_correct(double alpha_ols, std::size_t m) {
    if (m < 5) throw std::invalid_argument("MPK needs m >= 5");
    const double md = static_cast<double>(m);
    return (md * alpha_ols + 1.0) / (md - 4.0);
}

double ip4_correct(double alpha_ols, std::size_t m) {
    if (m < 5) throw std::invalid_argument("IP4 needs m >= 5");
    const double md = static_cast<double>(m);
    double a = alpha_ols;
    for (int k = 0; k < 4; ++k) a = alpha_ols + (1.0 + 4.0 * a) / md;
    return a;
}

Ar1Estimate estimate_ar1(const TimeSeries& series, std::size_t m, Ar1Method method) {
    if (m < 5) throw ParamError("m", "subsample size m must be >= 5");
    if (series.size() < m) throw DataError("series shorter than the subsample size m");

    auto estimates = kernels::parallel::lag1_autocorrelations(series.values(), m);
    for (double& a : estimates) {
        switch (method) {
        case Ar1Method::ols: break;
        case Ar1Method::mpk: a = mpk_correct(a, m); break;
        case Ar1Method::ip4: a = ip4_correct(a, m); break;
        }
    }
    const std::size_t count = estimates.size();
    const auto mid = estimates.begin() + static_cast<std::ptrdiff_t>(count / 2);
    std::nth_element(estimates.begin(), mid, estimates.end());
    double median = *mid;
    if (count % 2 == 0) {
        median = 0.5 * (median + *std::max_element(estimates.begin(), mid));
    }

    Ar1Estimate est;
    est.method = method;
    est.m = m;
    est.n_subsamples = count;
    est.clamped = std::abs(median) > alpha_limit;
    est.alpha = std::clamp(median, -alpha_limit, alpha_limit);
    return est;
}

TimeSeries prewhiten(const TimeSeries& series, double alpha) {
    if (!(std::abs(alpha) < 1.0)) throw std::invalid_argument("prewhiten: |alpha| must be < 1");
    if (series.size() < 2) throw DataError("prewhiten needs at least two points");
    std::vector<double> out(series.size() - 1);
    for (std::size_t i = 0; i + 1 < series.size(); ++i) out[i] = series[i + 1] - alpha * series[i];
    std::optional<std::vector<double>> labels;
    if (series.labels()) labels.emplace(series.labels()->begin() + 1, series.labels()->end());
    return TimeSeries(std::move(out), std::move(labels), series.name());
}

std::string to_string(Ar1Method method) {
    switch (method) {
    case Ar1Method::ols: return "ols";
    case Ar1Method::mpk: return "mpk";
    case Ar1Method::ip4: return "ip4";
    }
    return "ols";
}

}  // namespace srsd
