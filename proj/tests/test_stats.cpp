#include <doctest.h>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <random>
#include <tuple>
#include <vector>

#include "srsd/stats.hpp"

using namespace srsd;
using doctest::Approx;

TEST_CASE("incomplete beta matches boost") {
    for (double a : {0.5, 1.0, 2.5, 9.5, 19.0}) {
        for (double b : {0.5, 1.0, 3.0, 9.5, 40.0}) {
            for (double x : {0.001, 0.1, 0.37, 0.5, 0.8, 0.999}) {
                CHECK(stats::incomplete_beta(a, b, x) ==
                      Approx(boost::math::ibeta(a, b, x)).epsilon(1e-10));
            }
        }
    }
    CHECK(stats::incomplete_beta(2, 3, 0.0) == 0.0);
    CHECK(stats::incomplete_beta(2, 3, 1.0) == 1.0);
}

TEST_CASE("normal distribution matches boost") {
    const boost::math::normal_distribution<> n;
    for (double z : {-8.0, -3.0, -1.2, 0.0, 0.4, 2.5, 6.0}) {
        CHECK(stats::normal_cdf(z) == Approx(boost::math::cdf(n, z)).epsilon(1e-12));
        CHECK(stats::normal_sf(z) ==
              Approx(boost::math::cdf(boost::math::complement(n, z))).epsilon(1e-10));
    }
    for (double p : {1e-10, 1e-4, 0.025, 0.3, 0.5, 0.9, 0.975, 1 - 1e-9}) {
        CHECK(stats::normal_quantile(p) == Approx(boost::math::quantile(n, p)).epsilon(1e-10));
    }
}

TEST_CASE("student t matches boost") {
    for (int df : {1, 2, 5, 18, 28, 38, 120}) {
        const boost::math::students_t_distribution<> t(df);
        for (double x : {-4.0, -1.0, 0.0, 0.7, 2.0, 9.0}) {
            CHECK(stats::student_t_cdf(x, df) == Approx(boost::math::cdf(t, x)).epsilon(1e-10));
        }
        for (double p : {0.005, 0.05, 0.5, 0.9, 0.95, 0.975, 0.995}) {
            CHECK(stats::student_t_quantile(p, df) ==
                  Approx(boost::math::quantile(t, p)).epsilon(1e-8));
        }
    }
}

TEST_CASE("F distribution matches boost") {
    for (int d1 : {1, 4, 14, 19}) {
        for (int d2 : {3, 14, 19, 60}) {
            const boost::math::fisher_f_distribution<> f(d1, d2);
            for (double x : {0.05, 0.4, 1.0, 2.5, 8.0}) {
                CHECK(stats::f_cdf(x, d1, d2) == Approx(boost::math::cdf(f, x)).epsilon(1e-10));
            }
            for (double p : {0.025, 0.05, 0.5, 0.95, 0.975}) {
                CHECK(stats::f_quantile(p, d1, d2) ==
                      Approx(boost::math::quantile(f, p)).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("frozen critical values") {
    CHECK(stats::student_t_quantile(0.975, 38) == Approx(2.024394164).epsilon(1e-9));
    CHECK(stats::student_t_quantile(0.95, 28) == Approx(1.701130934).epsilon(1e-9));
    CHECK(stats::f_quantile(0.975, 19, 19) == Approx(2.526450934).epsilon(1e-9));
    CHECK(stats::f_quantile(0.025, 19, 19) == Approx(0.395812160).epsilon(1e-8));
}

TEST_CASE("quantile and cdf invert each other") {
    for (int df : {3, 10, 38}) {
        for (double p = 0.01; p < 1.0; p += 0.07) {
            CHECK(stats::student_t_cdf(stats::student_t_quantile(p, df), df) ==
                  Approx(p).epsilon(1e-10));
            CHECK(stats::f_cdf(stats::f_quantile(p, df, 19), df, 19) == Approx(p).epsilon(1e-10));
        }
    }
}

TEST_CASE("symmetries") {
    for (double p : {0.01, 0.2, 0.4}) {
        CHECK(stats::student_t_quantile(p, 9) == Approx(-stats::student_t_quantile(1 - p, 9)));
        CHECK(stats::normal_quantile(p) == Approx(-stats::normal_quantile(1 - p)));
        CHECK(stats::f_quantile(p, 7, 12) == Approx(1.0 / stats::f_quantile(1 - p, 12, 7)));
    }
}

TEST_CASE("sample statistics") {
    const std::vector<double> x{1, 2, 3, 4};
    CHECK(stats::mean(x) == 2.5);
    CHECK(stats::sample_variance(x) == Approx(5.0 / 3.0));
    CHECK(stats::mean_of_squares(x) == 7.5);
}

TEST_CASE("running average variance") {
    const std::vector<double> x{1, 2, 4, 8};
    // windows of 3: var(1,2,4) = 7/3, var(2,4,8) = 28/3
    CHECK(stats::running_avg_variance(x, 3) == Approx((7.0 / 3 + 28.0 / 3) / 2));
    CHECK(stats::running_avg_variance(x, 4) == Approx(stats::sample_variance(x)));
    CHECK_THROWS_AS(stats::running_avg_variance(x, 5), DataError);
}

TEST_CASE("pearson") {
    const std::vector<double> a{1, 2, 3}, b{1, 2, 4};
    CHECK(stats::pearson_r(a, b) == Approx(0.9819805).epsilon(1e-7));
    const std::vector<double> c{1, 1, 1};
    CHECK_THROWS_AS(stats::pearson_r(a, c), DataError);
    CHECK_THROWS_AS(stats::pearson_r(a, std::vector<double>{1, 2}), DataError);

    std::mt19937_64 rng(4);
    std::normal_distribution<double> nd;
    std::vector<double> u(50), v(50), su(50), sv(50);
    for (std::size_t i = 0; i < 50; ++i) {
        u[i] = nd(rng);
        v[i] = u[i] + nd(rng);
        su[i] = 3 * u[i] - 7;
        sv[i] = 0.5 * v[i] + 2;
    }
    CHECK(stats::pearson_r(u, v) == Approx(stats::pearson_r(su, sv)).epsilon(1e-12));
    CHECK(stats::pearson_r(u, v) == Approx(stats::pearson_r(v, u)).epsilon(1e-14));
}

TEST_CASE("fisher comparison and intervals") {
    const auto c = stats::fisher_compare(0.59, 19, -0.01, 27);
    CHECK(c.z_statistic == Approx(2.1307).epsilon(1e-4));
    CHECK(c.p_value == Approx(0.03312).epsilon(1e-3));
    CHECK(stats::fisher_compare(0.7, 30, -0.7, 30).p_value == Approx(1.85e-10).epsilon(0.01));
    CHECK(stats::fisher_compare(0.3, 20, 0.3, 40).p_value == Approx(1.0));

    const auto swapped = stats::fisher_compare(-0.01, 27, 0.59, 19);
    CHECK(swapped.p_value == Approx(c.p_value));
    CHECK(swapped.z_statistic == Approx(-c.z_statistic));

    CHECK_THROWS_AS(stats::fisher_compare(1.0, 10, 0.2, 10), std::domain_error);
    CHECK_THROWS_AS(stats::fisher_compare(0.5, 3, 0.2, 10), std::invalid_argument);

    auto [lo, hi] = stats::fisher_ci(0.69, 49, 0.90);
    CHECK(lo == Approx(0.540906).epsilon(1e-5));
    CHECK(hi == Approx(0.797052).epsilon(1e-5));
    std::tie(lo, hi) = stats::fisher_ci(-0.01, 27, 0.90);
    CHECK(lo == Approx(-0.3326).epsilon(1e-3));
    CHECK(hi == Approx(0.3147).epsilon(1e-3));
    std::tie(lo, hi) = stats::fisher_ci(0.59, 19, 0.90);
    CHECK(std::abs(lo - 0.25) < 0.02);
    CHECK(std::abs(hi - 0.80) < 0.01);
}

TEST_CASE("p-values on summary statistics") {
    CHECK_FALSE(stats::two_sample_t_p_value(3, 0, 1, 10, 1, 1).has_value());
    CHECK_FALSE(stats::two_sample_t_p_value(10, 0, 0, 10, 0, 0).has_value());
    CHECK(*stats::two_sample_t_p_value(10, 0, 1, 10, 0, 1) == Approx(1.0));
    // Two groups of 15 with means differing by one pooled sd: t = sqrt(7.5).
    const double t = std::sqrt(7.5);
    CHECK(*stats::two_sample_t_p_value(15, 0, 1, 15, 1, 1) ==
          Approx(2 * (1 - stats::student_t_cdf(t, 28))).epsilon(1e-12));

    CHECK_FALSE(stats::variance_ratio_p_value(10, 0.0, 10, 1.0).has_value());
    CHECK(*stats::variance_ratio_p_value(20, 1.0, 20, 1.0) == Approx(1.0));
    const double fcr = stats::f_quantile(0.975, 19, 19);
    CHECK(*stats::variance_ratio_p_value(20, fcr, 20, 1.0) == Approx(0.05).epsilon(1e-9));
    CHECK(*stats::variance_ratio_p_value(20, 1.0, 20, fcr) == Approx(0.05).epsilon(1e-9));
}

TEST_CASE("first differences keep the later labels") {
    const TimeSeries s({1.0, 4.0, 2.0}, std::vector<double>{10, 11, 12});
    const auto d = stats::first_differences(s);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 3.0);
    CHECK(d[1] == -2.0);
    CHECK(d.label_at(1) == 11);
}
