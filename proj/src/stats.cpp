#include "srsd/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "srsd/kernels.hpp"

namespace srsd::stats {

namespace {

// Lanczos approximation (g = 7, 9 terms). std::lgamma writes the global
// signgam on glibc, which races when detectors run on several threads.
double log_gamma(double x) {
    static constexpr std::array<double, 9> c{
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        return std::log(std::numbers::pi / std::abs(std::sin(std::numbers::pi * x))) -
               log_gamma(1.0 - x);
    }
    x -= 1.0;
    double a = c[0];
    const double t = x + 7.5;
    for (std::size_t i = 1; i < c.size(); ++i) a += c[i] / (x + static_cast<double>(i));
    return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t + std::log(a);
}

// Continued fraction for the incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int max_iter = 10000;
    constexpr double eps = 1e-16;
    constexpr double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h;
}

// Returns {I_x(a,b), 1 - I_x(a,b)}, each computed without cancellation
// on the side where it is small.
std::pair<double, double> incomplete_beta_pair(double a, double b, double x) {
    if (x <= 0.0) return {0.0, 1.0};
    if (x >= 1.0) return {1.0, 0.0};
    const double log_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * std::log(x) +
                             b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        const double lower = front * beta_continued_fraction(a, b, x) / a;
        return {lower, 1.0 - lower};
    }
    const double upper = front * beta_continued_fraction(b, a, 1.0 - x) / b;
    return {1.0 - upper, upper};
}

// Upper tail of Student's t for t >= 0.
double student_t_sf_positive(double t, double df) {
    const double x = df / (df + t * t);
    return 0.5 * incomplete_beta_pair(0.5 * df, 0.5, x).first;
}

// Bisection of a decreasing function g on [lo, hi] for g(x) = target,
// geometric midpoints when both ends are positive.
template <typename G>
double bisect_decreasing(G&& g, double target, double lo, double hi, bool geometric) {
    for (int i = 0; i < 400; ++i) {
        const double mid = geometric ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (g(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
        if ((hi - lo) <= 1e-15 * std::max(1.0, std::abs(hi))) break;
    }
    return geometric ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
}

void check_prob(double prob) {
    if (!(prob > 0.0 && prob < 1.0)) {
        throw std::invalid_argument("probability must lie in (0, 1)");
    }
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("incomplete_beta: a, b must be > 0");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("incomplete_beta: x outside [0, 1]");
    return incomplete_beta_pair(a, b, x).first;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double normal_quantile(double prob) {
    check_prob(prob);
    // Acklam's rational approximation, then one Halley step against erfc.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    double x;
    if (prob < p_low) {
        const double q = std::sqrt(-2.0 * std::log(prob));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (prob <= 1.0 - p_low) {
        const double q = prob - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-prob));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = prob < 0.5 ? normal_cdf(x) - prob : (1.0 - prob) - normal_sf(x);
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw std::invalid_argument("student_t_cdf: df must be > 0");
    if (t >= 0.0) return 1.0 - student_t_sf_positive(t, df);
    return student_t_sf_positive(-t, df);
}

double student_t_quantile(double prob, int df) {
    check_prob(prob);
    if (df < 1) throw std::invalid_argument("student_t_quantile: df must be >= 1");
    if (prob == 0.5) return 0.0;
    const double tail = prob < 0.5 ? prob : 1.0 - prob;
    const double dfd = static_cast<double>(df);
    double hi = 1.0;
    while (student_t_sf_positive(hi, dfd) > tail) hi *= 2.0;
    const double q = bisect_decreasing([dfd](double t) { return student_t_sf_positive(t, dfd); },
                                       tail, 0.0, hi, false);
    return prob < 0.5 ? -q : q;
}

double f_cdf(double x, double df1, double df2) {
    if (!(df1 > 0.0 && df2 > 0.0)) throw std::invalid_argument("f_cdf: df must be > 0");
    if (x <= 0.0) return 0.0;
    return incomplete_beta_pair(0.5 * df1, 0.5 * df2, df1 * x / (df1 * x + df2)).first;
}

double f_quantile(double prob, int df1, int df2) {
    check_prob(prob);
    if (df1 < 1 || df2 < 1) throw std::invalid_argument("f_quantile: df must be >= 1");
    const double a = df1, b = df2;
    auto sf = [a, b](double x) {
        return incomplete_beta_pair(0.5 * a, 0.5 * b, a * x / (a * x + b)).second;
    };
    const double tail = 1.0 - prob;
    double lo = 1.0, hi = 1.0;
    while (sf(hi) > tail) hi *= 2.0;
    while (sf(lo) < tail) lo *= 0.5;
    if (prob < 0.5) {
        // Below the median solve on the lower tail for relative accuracy.
        auto cdf = [a, b](double x) {
            return -incomplete_beta_pair(0.5 * a, 0.5 * b, a * x / (a * x + b)).first;
        };
        return bisect_decreasing(cdf, -prob, lo, hi, true);
    }
    return bisect_decreasing(sf, tail, lo, hi, true);
}

double mean(std::span<const double> x) {
    if (x.empty()) throw DataError("mean of an empty sample");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
    if (x.size() < 2) throw DataError("sample variance needs at least two points");
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size() - 1);
}

double mean_of_squares(std::span<const double> x) {
    if (x.empty()) throw DataError("mean of squares of an empty sample");
    double s = 0.0;
    for (double v : x) s += v * v;
    return s / static_cast<double>(x.size());
}

double running_avg_variance(std::span<const double> x, int l) {
    if (l < 2) throw std::invalid_argument("running_avg_variance: l must be >= 2");
    if (x.size() < static_cast<std::size_t>(l)) {
        throw DataError("series of length " + std::to_string(x.size()) + " is shorter than l = " +
                        std::to_string(l));
    }
    const auto vars = kernels::parallel::window_variances(x, static_cast<std::size_t>(l));
    double s = 0.0;
    for (double v : vars) s += v;
    return s / static_cast<double>(vars.size());
}

double pearson_r(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DataError("pearson_r: length mismatch");
    if (x.size() < 2) throw DataError("pearson_r: need at least two points");
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DataError("pearson_r: constant input");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationComparison fisher_compare(double r1, std::size_t n1, double r2, std::size_t n2) {
    if (!(std::abs(r1) < 1.0) || !(std::abs(r2) < 1.0)) {
        throw std::domain_error("fisher_compare: |r| must be < 1");
    }
    if (n1 < 4 || n2 < 4) throw std::invalid_argument("fisher_compare: sample sizes must be >= 4");
    const double se = std::sqrt(1.0 / static_cast<double>(n1 - 3) + 1.0 / static_cast<double>(n2 - 3));
    const double z = (std::atanh(r1) - std::atanh(r2)) / se;
    const double p = std::min(1.0, 2.0 * normal_sf(std::abs(z)));
    return {r1, n1, r2, n2, z, p};
}

std::pair<double, double> fisher_ci(double r, std::size_t n, double confidence) {
    if (!(std::abs(r) < 1.0)) throw std::domain_error("fisher_ci: |r| must be < 1");
    if (n < 4) throw std::invalid_argument("fisher_ci: n must be >= 4");
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::invalid_argument("fisher_ci: confidence must lie in (0, 1)");
    }
    const double half = normal_quantile(0.5 * (1.0 + confidence)) /
                        std::sqrt(static_cast<double>(n - 3));
    const double z = std::atanh(r);
    return {std::tanh(z - half), std::tanh(z + half)};
}

TimeSeries first_differences(const TimeSeries& series) {
    if (series.size() < 2) throw DataError("first differences need at least two points");
    std::vector<double> out(series.size() - 1);
    for (std::size_t i = 0; i + 1 < series.size(); ++i) out[i] = series[i + 1] - series[i];
    std::optional<std::vector<double>> labels;
    if (series.labels()) labels.emplace(series.labels()->begin() + 1, series.labels()->end());
    return TimeSeries(std::move(out), std::move(labels), series.name());
}

std::optional<double> two_sample_t_p_value(std::size_t n1, double mean1, double var1,
                                           std::size_t n2, double mean2, double var2) {
    if (n1 < 4 || n2 < 4) return std::nullopt;
    const double df = static_cast<double>(n1 + n2 - 2);
    const double pooled =
        (static_cast<double>(n1 - 1) * var1 + static_cast<double>(n2 - 1) * var2) / df;
    if (!(pooled > 0.0)) return std::nullopt;
    const double t = (mean2 - mean1) /
                     std::sqrt(pooled * (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2)));
    return std::min(1.0, 2.0 * student_t_sf_positive(std::abs(t), df));
}

std::optional<double> variance_ratio_p_value(std::size_t n1, double var1, std::size_t n2,
                                             double var2) {
    if (n1 < 4 || n2 < 4) return std::nullopt;
    if (!(var1 > 0.0 && var2 > 0.0)) return std::nullopt;
    const double df1 = static_cast<double>(n1 - 1), df2 = static_cast<double>(n2 - 1);
    const double f = var1 / var2;
    const auto [lower, upper] = incomplete_beta_pair(0.5 * df1, 0.5 * df2, df1 * f / (df1 * f + df2));
    return std::min(1.0, 2.0 * std::min(lower, upper));
}

}  // namespace srsd::stats
