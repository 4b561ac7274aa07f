#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <tuple>
#include <vector>

#include "srsd/mean_shift.hpp"
#include "srsd/stats.hpp"
#include "srsd/synthgen.hpp"
#include "srsd/variance_shift.hpp"
#include "reference_stars.hpp"

using namespace srsd;
using doctest::Approx;

namespace {

const DetectionParams kParams{0.05, 20, Prewhitening::none, 10};

std::vector<std::size_t> indices(const std::vector<ChangePoint>& cps) {
    std::vector<std::size_t> out;
    for (const auto& c : cps) out.push_back(c.index);
    return out;
}

TimeSeries sigma_step(std::size_t n, std::size_t at, double s1, double s2, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = nd(rng) * (i + 1 < at ? s1 : s2);
    return TimeSeries(std::move(v));
}

// Split maximizing the log-ratio of mean squares, weighted by segment size.
std::size_t best_f_split(std::span<const double> x, std::size_t min_seg) {
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t k = min_seg; k + min_seg <= x.size(); ++k) {
        const double a = stats::mean_of_squares(x.subspan(0, k));
        const double b = stats::mean_of_squares(x.subspan(k));
        const double all = stats::mean_of_squares(x);
        const double lr = x.size() * std::log(all) - k * std::log(a) -
                          (x.size() - k) * std::log(b);
        if (lr > best) {
            best = lr;
            arg = k + 1;
        }
    }
    return arg;
}

std::vector<std::size_t> reference_cps(const TimeSeries& s, const DetectionParams& p) {
    const std::vector<double> v(s.values().begin(), s.values().end());
    return reference::stars(v, reference::Kind::variance, p.p, p.l);
}

}  // namespace

TEST_CASE("critical variances") {
    auto [up, down] = critical_variances(1.0, kParams);
    CHECK(up == Approx(2.526450934).epsilon(1e-8));
    CHECK(down == Approx(0.395812160).epsilon(1e-7));
    std::tie(up, down) = critical_variances(4.0, kParams);
    CHECK(up == Approx(10.105804).epsilon(1e-7));
    std::tie(up, down) = critical_variances(2.0, {0.999999, 20, Prewhitening::none, 10});
    CHECK(up == Approx(2.0).epsilon(1e-5));
    CHECK(down == Approx(2.0).epsilon(1e-5));
    CHECK_THROWS_AS(critical_variances(0.0, kParams), std::invalid_argument);
    CHECK_THROWS_AS(critical_variances(-1.0, kParams), std::invalid_argument);
}

TEST_CASE("degenerate inputs") {
    CHECK_THROWS_AS(detect_variance(TimeSeries(std::vector<double>(30, 0.0)), kParams), DataError);
    CHECK_THROWS_AS(detect_variance(TimeSeries(std::vector<double>(10, 1.0)), kParams), DataError);
}

TEST_CASE("normalized regimes have unit mean square") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto s = sigma_step(100, 51, 1.0, 3.0, seed);
        const auto r = detect_variance(s, kParams);
        CHECK_NOTHROW(check_partition(s.size(), r.regimes));
        for (const auto& reg : r.regimes) {
            CHECK(reg.value > 0.0);
            const auto seg = r.normalized.values().subspan(reg.start - 1, reg.length());
            CHECK(stats::mean_of_squares(seg) == Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("sign invariance and scale equivariance") {
    for (std::uint64_t seed = 20; seed < 30; ++seed) {
        const auto s = sigma_step(100, 51, 1.0, 2.0, seed);
        const auto base = detect_variance(s, kParams);
        std::vector<double> neg(s.values().begin(), s.values().end()), scaled = neg;
        for (auto& v : neg) v = -v;
        for (auto& v : scaled) v *= 3.0;
        const auto rn = detect_variance(TimeSeries(neg), kParams);
        CHECK(rn.regimes == base.regimes);
        CHECK(rn.change_points == base.change_points);
        CHECK(rn.rssi == base.rssi);
        const auto rs = detect_variance(TimeSeries(scaled), kParams);
        REQUIRE(indices(rs.change_points) == indices(base.change_points));
        for (std::size_t k = 0; k < rs.regimes.size(); ++k) {
            CHECK(rs.regimes[k].value == Approx(9.0 * base.regimes[k].value).epsilon(1e-12));
        }
    }
}

TEST_CASE("normalization idempotence") {
    // the normalized output should look no noisier than white noise of the same length
    const int runs = 200;
    int quiet = 0, white_quiet = 0;
    for (int k = 0; k < runs; ++k) {
        const auto s = sigma_step(100, 51, 1.0, 3.0, synth::derive_seed(13, k));
        const auto once = detect_variance(s, kParams);
        quiet += detect_variance(once.normalized, kParams).change_points.empty();
        white_quiet += reference_cps(sigma_step(100, 1, 1.0, 1.0, synth::derive_seed(14, k)),
                                     kParams).empty();
    }
    MESSAGE("normalized quiet " << quiet << ", white noise quiet " << white_quiet);
    CHECK(quiet >= white_quiet);
}

TEST_CASE("agrees with the reference scan") {
    for (int k = 0; k < 300; ++k) {
        const double s2 = k % 3 == 0 ? 1.0 : (k % 3 == 1 ? 2.5 : 0.4);
        const auto s = sigma_step(100, 51, 1.0, s2, synth::derive_seed(17, k));
        for (const auto& p : {kParams, DetectionParams{0.1, 15, Prewhitening::none, 10}}) {
            CAPTURE(k);
            CHECK(indices(detect_variance(s, p).change_points) == reference_cps(s, p));
        }
    }
}

TEST_CASE("sigma step 1 -> 3 is localized") {
    const int runs = 500;
    int hit = 0, oracle_hit = 0;
    for (int k = 0; k < runs; ++k) {
        const auto s = sigma_step(100, 51, 1.0, 3.0, synth::derive_seed(7, k));
        const auto idx = indices(detect_variance(s, kParams).change_points);
        hit += std::any_of(idx.begin(), idx.end(),
                           [](std::size_t i) { return std::abs(static_cast<long>(i) - 51) <= 2; });
        oracle_hit += std::abs(static_cast<long>(best_f_split(s.values(), 4)) - 51) <= 2;
    }
    MESSAGE("detector " << hit << " / " << runs << ", oracle " << oracle_hit << " / " << runs);
    CHECK(hit >= oracle_hit * 3 / 4);
}

TEST_CASE("i.i.d. noise false alarm rate matches the reference") {
    const int runs = 1000;
    int quiet = 0, ref_quiet = 0;
    for (int k = 0; k < runs; ++k) {
        const auto s = sigma_step(100, 1, 1.0, 1.0, synth::derive_seed(11, k));
        quiet += detect_variance(s, kParams).change_points.empty();
        ref_quiet += reference_cps(s, kParams).empty();
    }
    MESSAGE("quiet " << quiet << " / " << runs << ", reference " << ref_quiet);
    CHECK(quiet == ref_quiet);
}

TEST_CASE("batch and stream agree") {
    for (std::uint64_t seed = 40; seed < 60; ++seed) {
        const auto s = sigma_step(120, 61, 1.0, 2.5, seed);
        const auto batch = detect_variance(s, kParams);
        auto state = init_variance_monitor(s.values().subspan(0, 20), kParams);
        for (std::size_t i = 20; i < s.size(); ++i) monitor_variance(state, s[i], kParams);
        const auto out = sequential::finish(state);
        CHECK(indices(out.change_points) == indices(batch.change_points));
        CHECK(out.trace == batch.rssi);
    }
}

TEST_CASE("fixture variance shifts") {
    const auto f = synth::canonical_fixture();
    const auto rx = detect_mean(f.x, kParams).residuals;
    const auto ry = detect_mean(f.y, kParams).residuals;
    CHECK(indices(detect_variance(rx, kParams).change_points) == std::vector<std::size_t>{51});
    CHECK(indices(detect_variance(ry, kParams).change_points) == std::vector<std::size_t>{21});
}
