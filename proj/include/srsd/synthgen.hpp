#pragma once

// Seedable bivariate series with piecewise correlation, variance and mean.
//
// Random stream: std::mt19937_64 seeded with the spec seed. Each index draws
// one Box-Muller pair from two consecutive uniforms
//   u = ((word >> 11) + 0.5) * 2^-53,
//   z1 = sqrt(-2 ln u1) cos(2 pi u2),  z2 = sqrt(-2 ln u1) sin(2 pi u2),
// then x0 = z1, y0 = rho z1 + sqrt(1 - rho^2) z2, scaled by sigma and
// shifted by mu. Ensemble run k uses derive_seed(base, k).

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "srsd/core.hpp"

namespace srsd::synth {

/// Piecewise-constant parameter: (first 1-based index, value) pairs.
struct Segment {
    std::size_t start = 1;
    double value = 0.0;

    friend bool operator==(const Segment&, const Segment&) = default;
};

struct RegimeSpec {
    std::size_t n = 0;
    std::vector<Segment> correlation{{1, 0.0}};
    std::vector<Segment> x_variance{{1, 1.0}};
    std::vector<Segment> y_variance{{1, 1.0}};
    std::vector<Segment> x_mean{{1, 0.0}};
    std::vector<Segment> y_mean{{1, 0.0}};
    std::uint64_t seed = 0;

    friend bool operator==(const RegimeSpec&, const RegimeSpec&) = default;
};

/// Throws ParamError on malformed segments.
void validate(const RegimeSpec& spec);

/// Normal variates from a 64-bit Mersenne Twister.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    std::pair<double, double> pair();
    double next();

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// splitmix64 of base + (run + 1) * golden ratio constant.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t run);

std::pair<TimeSeries, TimeSeries> generate_pair(const RegimeSpec& spec);

/// n = 70; rho -0.6 -> 0.6 at 36; x: var 1 -> 9 at 51, mean -1 -> 1 at 26;
/// y: var 9 -> 1 at 21, mean 1 -> -1 at 41.
RegimeSpec synthetic_experiment_spec(std::uint64_t seed);

struct ExpectedChangePoints {
    std::size_t x_mean = 26;
    std::size_t y_mean = 41;
    std::size_t x_variance = 51;
    std::size_t y_variance = 21;
    std::size_t correlation = 36;
    std::size_t spurious_correlation = 21;
};

struct CanonicalFixture {
    TimeSeries x;
    TimeSeries y;
    ExpectedChangePoints expected;
};

/// Seed of the frozen fixture realization.
inline constexpr std::uint64_t fixture_seed = 1671966;

/// The frozen realization shipped with the repository (data/fixture_synthetic.csv,
/// compiled in so tests do not depend on the working directory).
CanonicalFixture canonical_fixture();

}  // namespace srsd::synth
