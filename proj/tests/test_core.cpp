#include <doctest.h>

#include <cmath>
#include <limits>

#include "srsd/core.hpp"

using namespace srsd;

namespace {

std::string param_error_field(const DetectionParams& p) {
    try {
        validate_params(p);
    } catch (const ParamError& e) {
        return e.field();
    }
    return {};
}

}  // namespace

TEST_CASE("validate_params accepts the published settings") {
    CHECK(validate_params({0.05, 20, Prewhitening::none, 10}) ==
          DetectionParams{0.05, 20, Prewhitening::none, 10});
    CHECK_NOTHROW(validate_params({0.1, 15, Prewhitening::none, 10}));
    CHECK_NOTHROW(validate_params({0.1, 15, Prewhitening::ip4, 8}));
}

TEST_CASE("validate_params names the offending field") {
    CHECK(param_error_field({1.5, 20, Prewhitening::none, 10}) == "p");
    CHECK(param_error_field({0.0, 20, Prewhitening::none, 10}) == "p");
    CHECK(param_error_field({0.05, 2, Prewhitening::none, 10}) == "l");
    CHECK(param_error_field({0.05, 20, Prewhitening::mpk, 4}) == "m");
    CHECK(param_error_field({0.05, 20, Prewhitening::ip4, 20}) == "m");
    // m is irrelevant without prewhitening.
    CHECK(param_error_field({0.05, 8, Prewhitening::none, 10}).empty());
}

TEST_CASE("TimeSeries rejects non-finite values and bad labels") {
    CHECK_THROWS_AS(TimeSeries({1.0, std::numeric_limits<double>::quiet_NaN()}), DataError);
    CHECK_THROWS_AS(TimeSeries({1.0, INFINITY}), DataError);
    CHECK_THROWS_AS(TimeSeries({1.0, 2.0}, std::vector<double>{1.0}), DataError);
    CHECK_THROWS_AS(TimeSeries({1.0, 2.0}, std::vector<double>{2000.0, 2000.0}), DataError);

    const TimeSeries s({1.0, 2.0, 3.0}, std::vector<double>{1921, 1922, 1923}, "barrow");
    CHECK(s.label_at(2) == 1922);
    CHECK(TimeSeries({5.0, 6.0}).label_at(2) == 2.0);
    const auto tail = s.slice(1, 2);
    CHECK(tail.size() == 2);
    CHECK(tail.label_at(1) == 1922);
    CHECK(tail.name() == "barrow");
}

TEST_CASE("regimes_to_stepwise") {
    SUBCASE("single regime") {
        const std::vector<Regime> r{{1, 4, RegimeKind::mean, 2.0, {}, {}, {}}};
        const auto s = regimes_to_stepwise(4, r);
        CHECK(std::vector<double>(s.values().begin(), s.values().end()) ==
              std::vector<double>{2, 2, 2, 2});
    }
    SUBCASE("two regimes") {
        const std::vector<Regime> r{{1, 2, RegimeKind::mean, 0.0, {}, {}, {}},
                                    {3, 4, RegimeKind::mean, 5.0, {}, {}, {}}};
        const auto s = regimes_to_stepwise(4, r);
        CHECK(std::vector<double>(s.values().begin(), s.values().end()) ==
              std::vector<double>{0, 0, 5, 5});
    }
    SUBCASE("gap") {
        const std::vector<Regime> r{{1, 2, RegimeKind::mean, 0.0, {}, {}, {}}};
        CHECK_THROWS_AS(regimes_to_stepwise(3, r), DataError);
    }
    SUBCASE("overlap") {
        const std::vector<Regime> r{{1, 2, RegimeKind::mean, 0.0, {}, {}, {}},
                                    {2, 3, RegimeKind::mean, 1.0, {}, {}, {}}};
        CHECK_THROWS_AS(regimes_to_stepwise(3, r), DataError);
    }
    SUBCASE("interior gap") {
        const std::vector<Regime> r{{1, 1, RegimeKind::mean, 0.0, {}, {}, {}},
                                    {3, 3, RegimeKind::mean, 1.0, {}, {}, {}}};
        CHECK_THROWS_AS(check_partition(3, r), DataError);
    }
}

TEST_CASE("enum text round trip") {
    for (auto m : {Prewhitening::none, Prewhitening::mpk, Prewhitening::ip4}) {
        CHECK(parse_prewhitening(to_string(m)) == m);
    }
    for (auto k : {RegimeKind::mean, RegimeKind::variance, RegimeKind::correlation}) {
        CHECK(parse_regime_kind(to_string(k)) == k);
    }
    CHECK_THROWS_AS(parse_prewhitening("ar2"), ParamError);
}
