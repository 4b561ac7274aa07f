#include "srsd/synthgen.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace srsd::synth {

namespace {

void validate_segments(const std::vector<Segment>& segs, std::size_t n, const std::string& field) {
    if (segs.empty() || segs.front().start != 1) {
        throw ParamError(field, field + ": first segment must start at 1");
    }
    for (std::size_t k = 0; k < segs.size(); ++k) {
        if (segs[k].start > n) throw ParamError(field, field + ": segment starts beyond n");
        if (k > 0 && segs[k].start <= segs[k - 1].start) {
            throw ParamError(field, field + ": segment starts must increase");
        }
        if (!std::isfinite(segs[k].value)) throw ParamError(field, field + ": non-finite value");
    }
}

double value_at(const std::vector<Segment>& segs, std::size_t index) {
    double v = segs.front().value;
    for (const auto& s : segs) {
        if (s.start > index) break;
        v = s.value;
    }
    return v;
}

}  // namespace

void validate(const RegimeSpec& spec) {
    if (spec.n < 1) throw ParamError("n", "n must be positive");
    validate_segments(spec.correlation, spec.n, "correlation");
    validate_segments(spec.x_variance, spec.n, "x_variance");
    validate_segments(spec.y_variance, spec.n, "y_variance");
    validate_segments(spec.x_mean, spec.n, "x_mean");
    validate_segments(spec.y_mean, spec.n, "y_mean");
    for (const auto& s : spec.correlation) {
        if (std::abs(s.value) > 1.0) throw ParamError("correlation", "|rho| must be <= 1");
    }
    for (const auto* segs : {&spec.x_variance, &spec.y_variance}) {
        for (const auto& s : *segs) {
            if (!(s.value > 0.0)) throw ParamError("variance", "variances must be > 0");
        }
    }
}

double NormalStream::uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::pair<double, double> NormalStream::pair() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

double NormalStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const auto [a, b] = pair();
    spare_ = b;
    has_spare_ = true;
    return a;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t run) {
    std::uint64_t z = base + (run + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::pair<TimeSeries, TimeSeries> generate_pair(const RegimeSpec& spec) {
    validate(spec);
    NormalStream rng(spec.seed);
    std::vector<double> x(spec.n), y(spec.n);
    for (std::size_t i = 1; i <= spec.n; ++i) {
        const auto [z1, z2] = rng.pair();
        const double rho = value_at(spec.correlation, i);
        const double x0 = z1;
        const double y0 = rho * z1 + std::sqrt(std::max(0.0, 1.0 - rho * rho)) * z2;
        x[i - 1] = value_at(spec.x_mean, i) + std::sqrt(value_at(spec.x_variance, i)) * x0;
        y[i - 1] = value_at(spec.y_mean, i) + std::sqrt(value_at(spec.y_variance, i)) * y0;
    }
    return {TimeSeries(std::move(x), std::nullopt, "x"), TimeSeries(std::move(y), std::nullopt, "y")};
}

RegimeSpec synthetic_experiment_spec(std::uint64_t seed) {
    RegimeSpec spec;
    spec.n = 70;
    spec.correlation = {{1, -0.6}, {36, 0.6}};
    spec.x_variance = {{1, 1.0}, {51, 9.0}};
    spec.y_variance = {{1, 9.0}, {21, 1.0}};
    spec.x_mean = {{1, -1.0}, {26, 1.0}};
    spec.y_mean = {{1, 1.0}, {41, -1.0}};
    spec.seed = seed;
    return spec;
}

}  // namespace srsd::synth
