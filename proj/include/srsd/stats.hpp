#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "srsd/core.hpp"

namespace srsd::stats {

// Distribution functions. Only what the detectors need.

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

double normal_cdf(double z);
/// Upper tail 1 - Phi(z), accurate far into the tail.
double normal_sf(double z);
double normal_quantile(double prob);

double student_t_cdf(double t, double df);
double student_t_quantile(double prob, int df);

double f_cdf(double x, double df1, double df2);
double f_quantile(double prob, int df1, int df2);

// Sample statistics.

double mean(std::span<const double> x);
/// Sample variance with denominator n - 1.
double sample_variance(std::span<const double> x);
double mean_of_squares(std::span<const double> x);

/// Mean of the (n-1)-denominated variances of every contiguous l-window.
double running_avg_variance(std::span<const double> x, int l);
inline double running_avg_variance(const TimeSeries& s, int l) {
    return running_avg_variance(s.values(), l);
}

double pearson_r(std::span<const double> x, std::span<const double> y);
inline double pearson_r(const TimeSeries& x, const TimeSeries& y) {
    return pearson_r(x.values(), y.values());
}

struct CorrelationComparison {
    double r1 = 0.0;
    std::size_t n1 = 0;
    double r2 = 0.0;
    std::size_t n2 = 0;
    double z_statistic = 0.0;
    double p_value = 1.0;
};

/// Two-sample Fisher r-to-z test, two-tailed.
CorrelationComparison fisher_compare(double r1, std::size_t n1, double r2, std::size_t n2);

/// Fisher-z confidence interval for a correlation.
std::pair<double, double> fisher_ci(double r, std::size_t n, double confidence);

/// x[i+1] - x[i]; labels of the later point are kept.
TimeSeries first_differences(const TimeSeries& series);

/// Pooled-variance two-sample t-test on summary statistics, two-tailed.
/// Empty when either sample has fewer than 4 points or the pooled
/// variance vanishes.
std::optional<double> two_sample_t_p_value(std::size_t n1, double mean1, double var1,
                                           std::size_t n2, double mean2, double var2);

/// Two-tailed F-test of var1/var2 with (n1 - 1, n2 - 1) degrees of freedom.
/// Empty when either sample has fewer than 4 points or a variance is zero.
std::optional<double> variance_ratio_p_value(std::size_t n1, double var1, std::size_t n2,
                                             double var2);

}  // namespace srsd::stats
