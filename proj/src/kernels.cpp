#include "srsd/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace srsd::kernels {

namespace {

double window_variance(const double* x, std::size_t w) {
    double mean = 0.0;
    for (std::size_t i = 0; i < w; ++i) mean += x[i];
    mean /= static_cast<double>(w);
    double ss = 0.0;
    for (std::size_t i = 0; i < w; ++i) ss += (x[i] - mean) * (x[i] - mean);
    return ss / static_cast<double>(w - 1);
}

double window_correlation(const double* x, const double* y, std::size_t w) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < w; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(w);
    my /= static_cast<double>(w);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < w; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

void check_window(std::size_t n, std::size_t w, std::size_t min_w) {
    if (w < min_w) throw std::invalid_argument("window too short");
    if (n < w) throw std::invalid_argument("series shorter than window");
}

}  // namespace

double lag1_autocorrelation(std::span<const double> x) {
    const std::size_t m = x.size();
    if (m < 2) throw std::invalid_argument("lag-1 autocorrelation needs two points");
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(m);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double d = x[i] - mean;
        den += d * d;
        if (i + 1 < m) num += d * (x[i + 1] - mean);
    }
    return den == 0.0 ? 0.0 : num / den;
}

namespace serial {

std::vector<double> window_variances(std::span<const double> x, std::size_t window) {
    check_window(x.size(), window, 2);
    std::vector<double> out(x.size() - window + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = window_variance(x.data() + i, window);
    }
    return out;
}

std::vector<double> window_correlations(std::span<const double> x, std::span<const double> y,
                                        std::size_t window) {
    if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
    check_window(x.size(), window, 2);
    std::vector<double> out(x.size() - window + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = window_correlation(x.data() + i, y.data() + i, window);
    }
    return out;
}

std::vector<double> lag1_autocorrelations(std::span<const double> x, std::size_t m) {
    check_window(x.size(), m, 2);
    std::vector<double> out(x.size() - m + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = lag1_autocorrelation(x.subspan(i, m));
    }
    return out;
}

}  // namespace serial

namespace parallel {

std::vector<double> window_variances(std::span<const double> x, std::size_t window) {
    check_window(x.size(), window, 2);
    std::vector<double> out(x.size() - window + 1);
    const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = window_variance(x.data() + i, window);
    }
    return out;
}

std::vector<double> window_correlations(std::span<const double> x, std::span<const double> y,
                                        std::size_t window) {
    if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
    check_window(x.size(), window, 2);
    std::vector<double> out(x.size() - window + 1);
    const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = window_correlation(x.data() + i, y.data() + i, window);
    }
    return out;
}

std::vector<double> lag1_autocorrelations(std::span<const double> x, std::size_t m) {
    check_window(x.size(), m, 2);
    std::vector<double> out(x.size() - m + 1);
    const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            lag1_autocorrelation(x.subspan(static_cast<std::size_t>(i), m));
    }
    return out;
}

}  // namespace parallel

}  // namespace srsd::kernels
