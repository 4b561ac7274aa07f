#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "srsd/correlation.hpp"
#include "srsd/kernels.hpp"
#include "srsd/prewhiten.hpp"
#include "srsd/stats.hpp"
#include "srsd/synthgen.hpp"

using namespace srsd;
using doctest::Approx;

namespace {

TimeSeries ar1(std::size_t n, double alpha, std::uint64_t seed) {
    synth::NormalStream z(seed);
    std::vector<double> v(n);
    v[0] = z.next() / std::sqrt(1.0 - alpha * alpha);
    for (std::size_t i = 1; i < n; ++i) v[i] = alpha * v[i - 1] + z.next();
    return TimeSeries(std::move(v));
}

}  // namespace

TEST_CASE("closed-form corrections") {
    CHECK(mpk_correct(0.1, 10) == Approx(2.0 / 6.0));
    CHECK(mpk_correct(0.0, 8) == Approx(0.25));
    CHECK_THROWS_AS(mpk_correct(0.1, 4), std::invalid_argument);
    CHECK_THROWS_AS(ip4_correct(0.1, 4), std::invalid_argument);
    // a_ols = 0, m = 10: 0.1, 0.14, 0.156, 0.1624
    CHECK(ip4_correct(0.0, 10) == Approx(0.1624));
}

TEST_CASE("IP4 iterates are increasing above -0.25") {
    for (double a : {-0.2, 0.0, 0.3, 0.6}) {
        for (std::size_t m : {5u, 8u, 12u}) {
            const double md = static_cast<double>(m);
            double prev = a;
            double cur = a;
            for (int k = 0; k < 4; ++k) {
                cur = a + (1.0 + 4.0 * cur) / md;
                CHECK(cur > prev);
                prev = cur;
            }
            CHECK(ip4_correct(a, m) == Approx(cur));
        }
    }
}

TEST_CASE("estimate_ar1 errors and bookkeeping") {
    const auto s = ar1(50, 0.3, 1);
    CHECK_THROWS_AS(estimate_ar1(s, 4, Ar1Method::mpk), ParamError);
    CHECK_THROWS_AS(estimate_ar1(s.slice(0, 6), 8, Ar1Method::mpk), DataError);
    const auto e = estimate_ar1(s, 10, Ar1Method::ip4);
    CHECK(e.m == 10);
    CHECK(e.n_subsamples == 41);
    CHECK(e.method == Ar1Method::ip4);
    CHECK(std::abs(e.alpha) < 1.0);
}

TEST_CASE("estimate is clamped") {
    std::vector<double> ramp(40);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i * i);
    const auto e = estimate_ar1(TimeSeries(ramp), 5, Ar1Method::mpk);
    CHECK(e.clamped);
    CHECK(e.alpha == 0.99);
}

TEST_CASE("white noise estimate is nearly unbiased") {
    const int runs = 1000;
    std::vector<double> est(runs);
    kernels::parallel::for_each_run(runs, [&](std::size_t k) {
        est[k] = estimate_ar1(ar1(2000, 0.0, synth::derive_seed(3, k)), 10, Ar1Method::mpk).alpha;
    });
    const double bias = stats::mean(est);
    MESSAGE("mean MPK estimate for alpha = 0: " << bias);
    CHECK(std::abs(bias) < 0.02);
}

TEST_CASE("prewhiten identities") {
    const TimeSeries s({1.0, 4.0, 2.0, 7.0}, std::vector<double>{1, 2, 3, 4});
    const auto p0 = prewhiten(s, 0.0);
    REQUIRE(p0.size() == 3);
    CHECK(p0[0] == 4.0);
    CHECK(p0[2] == 7.0);
    CHECK(p0.label_at(1) == 2);

    const auto pc = prewhiten(TimeSeries(std::vector<double>(5, 3.0)), 0.4);
    for (double v : pc.values()) CHECK(v == Approx(3.0 * 0.6));

    CHECK_THROWS_AS(prewhiten(s, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(prewhiten(s, -1.2), std::invalid_argument);
}

TEST_CASE("prewhitening removes lag-1 dependence") {
    for (double alpha : {0.3, 0.6, -0.4}) {
        const auto s = ar1(1000, alpha, 42);
        CHECK(std::abs(kernels::lag1_autocorrelation(s.values())) > 0.2);
        const auto w = prewhiten(s, alpha);
        CHECK(std::abs(kernels::lag1_autocorrelation(w.values())) < 0.05);
    }
}

TEST_CASE("prewhitened pipeline reports shifts in input positions") {
    const SrsdParams none{{0.05, 20, Prewhitening::none, 10}, {}, 0.9};
    SrsdParams ip4 = none;
    ip4.detection.prewhiten = Prewhitening::ip4;
    const int runs = 40;
    int hit = 0, extra_none = 0, extra_ip4 = 0;
    for (int k = 0; k < runs; ++k) {
        auto xs = ar1(200, 0.3, synth::derive_seed(5, 2 * k));
        std::vector<double> xv(xs.values().begin(), xs.values().end());
        for (std::size_t i = 100; i < xv.size(); ++i) xv[i] += 3.0;
        const TimeSeries x(std::move(xv));
        const auto y = ar1(200, 0.3, synth::derive_seed(5, 2 * k + 1));
        const auto a = run_srsd(x, y, none);
        const auto b = run_srsd(x, y, ip4);
        CHECK(a.index_offset == 0);
        CHECK(b.index_offset == 1);
        const auto& cps = b.x.mean->change_points;
        hit += std::any_of(cps.begin(), cps.end(), [&](const ChangePoint& c) {
            return std::abs(static_cast<long>(c.index + b.index_offset) - 101) <= 2;
        });
        extra_none += static_cast<int>(a.x.mean->change_points.size() +
                                       a.y.mean->change_points.size()) - 1;
        extra_ip4 += static_cast<int>(cps.size() + b.y.mean->change_points.size()) - 1;
    }
    MESSAGE("located " << hit << " / " << runs << "; extra shifts none " << extra_none
                       << ", ip4 " << extra_ip4);
    CHECK(hit >= runs * 3 / 4);
    CHECK(extra_ip4 < extra_none);
}
