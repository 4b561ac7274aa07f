#include "srsd/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "srsd/kernels.hpp"
#include "srsd/stats.hpp"

namespace srsd {

namespace {

constexpr std::size_t min_correlation_regime = 3;

struct ChannelCandidate {
    ChannelSource source;
    ChangePoint point;
};

bool is_degenerate(const TimeSeries& channel, double scale) {
    const auto v = channel.values();
    return std::all_of(v.begin(), v.end(),
                       [scale](double x) { return std::abs(x) <= 1e-12 * scale; });
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::optional<double> segment_r(std::span<const double> x, std::span<const double> y,
                                std::size_t first, std::size_t last) {
    if (last < first || last - first + 1 < 2) return std::nullopt;
    try {
        return stats::pearson_r(x.subspan(first - 1, last - first + 1),
                                y.subspan(first - 1, last - first + 1));
    } catch (const DataError&) {
        return std::nullopt;
    }
}

// Fisher z p-value for splitting [left, right] at c.
std::optional<double> split_p_value(std::span<const double> x, std::span<const double> y,
                                    std::size_t left, std::size_t c, std::size_t right) {
    if (c <= left || c > right) return std::nullopt;
    const std::size_t n1 = c - left, n2 = right - c + 1;
    if (n1 < 4 || n2 < 4) return std::nullopt;
    const auto r1 = segment_r(x, y, left, c - 1);
    const auto r2 = segment_r(x, y, c, right);
    if (!r1 || !r2 || std::abs(*r1) >= 1.0 || std::abs(*r2) >= 1.0) return std::nullopt;
    return stats::fisher_compare(*r1, n1, *r2, n2).p_value;
}

// r recovered from the channel variances: (s2+ - s2-) / (s2+ + s2-)
double channel_implied_r(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    double ms = 0.0, md = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        ms += x[i] + y[i];
        md += x[i] - y[i];
    }
    ms /= n;
    md /= n;
    double vs = 0.0, vd = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        vs += (x[i] + y[i] - ms) * (x[i] + y[i] - ms);
        vd += (x[i] - y[i] - md) * (x[i] - y[i] - md);
    }
    return vs + vd > 0.0 ? (vs - vd) / (vs + vd) : 0.0;
}

CorrelationDetection single_regime(std::span<const double> x, std::span<const double> y,
                                   double r, double confidence) {
    CorrelationDetection out;
    Regime reg{1, x.size(), RegimeKind::correlation, r, std::nullopt, {}, {}};
    if (std::abs(r) < 1.0 && x.size() >= 4) {
        const auto [lo, hi] = stats::fisher_ci(r, x.size(), confidence);
        reg.ci_low = lo;
        reg.ci_high = hi;
    }
    out.regimes.push_back(reg);
    out.implied_r.push_back(channel_implied_r(x, y));
    return out;
}

}  // namespace

std::pair<TimeSeries, TimeSeries> sum_diff_channels(const TimeSeries& x_norm,
                                                    const TimeSeries& y_norm) {
    if (x_norm.size() != y_norm.size()) throw DataError("sum/diff channels: length mismatch");
    std::vector<double> s(x_norm.size()), d(x_norm.size());
    for (std::size_t i = 0; i < x_norm.size(); ++i) {
        s[i] = x_norm[i] + y_norm[i];
        d[i] = x_norm[i] - y_norm[i];
    }
    return {TimeSeries(std::move(s), x_norm.labels(), "sum"),
            TimeSeries(std::move(d), x_norm.labels(), "diff")};
}

CorrelationDetection detect_correlation(const TimeSeries& x_norm, const TimeSeries& y_norm,
                                        const DetectionParams& params, double confidence) {
    validate_params(params);
    if (x_norm.size() != y_norm.size()) throw DataError("detect_correlation: length mismatch");
    const std::size_t n = x_norm.size();
    if (n < static_cast<std::size_t>(params.l)) {
        throw DataError("series of length " + std::to_string(n) + " is shorter than l = " +
                        std::to_string(params.l));
    }
    const auto x = x_norm.values();
    const auto y = y_norm.values();
    const auto [sum, diff] = sum_diff_channels(x_norm, y_norm);
    const double scale = std::max(max_abs(x), max_abs(y));

    // Perfect (anti)correlation zeroes one channel: r is exactly -1 or +1.
    if (is_degenerate(sum, scale)) return single_regime(x, y, -1.0, confidence);
    if (is_degenerate(diff, scale)) return single_regime(x, y, 1.0, confidence);

    CorrelationDetection out;
    out.sum_channel = detect_variance(sum, params);
    out.diff_channel = detect_variance(diff, params);

    std::vector<ChannelCandidate> cands;
    for (const auto& cp : out.sum_channel->change_points) cands.push_back({ChannelSource::sum, cp});
    for (const auto& cp : out.diff_channel->change_points) cands.push_back({ChannelSource::diff, cp});
    std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
        return a.point.index < b.point.index;
    });

    // Candidates within l/2 of their neighbour compete for one change-point.
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < cands.size(); ++k) {
        if (!groups.empty() &&
            2 * (cands[k].point.index - cands[groups.back().back()].point.index) <=
                static_cast<std::size_t>(params.l)) {
            groups.back().push_back(k);
        } else {
            groups.push_back({k});
        }
    }

    std::map<std::size_t, std::optional<double>> split_p;  // by candidate position in cands
    std::set<std::size_t> accepted_idx;
    std::map<std::size_t, std::size_t> winner_of;  // accepted index -> cands position
    std::size_t left = 1;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const std::size_t right =
            g + 1 < groups.size() ? cands[groups[g + 1].front()].point.index - 1 : n;
        std::optional<std::size_t> best;
        std::optional<double> best_p;
        for (std::size_t k : groups[g]) {
            const std::size_t c = cands[k].point.index;
            const auto p = split_p_value(x, y, left, c, right);
            split_p[k] = p;
            if (!best) {
                best = k;
                best_p = p;
            } else if (p && (!best_p || *p < *best_p)) {
                best = k;
                best_p = p;
            }
        }
        const std::size_t c = cands[*best].point.index;
        if (c > left && c - left >= min_correlation_regime &&
            right - c + 1 >= min_correlation_regime && segment_r(x, y, left, c - 1) &&
            segment_r(x, y, c, right)) {
            accepted_idx.insert(c);
            winner_of.emplace(c, *best);
            left = c;
        }
    }

    for (std::size_t k = 0; k < cands.size(); ++k) {
        out.candidates.push_back(CandidateAudit{cands[k].source, cands[k].point.index, split_p[k],
                                                accepted_idx.contains(cands[k].point.index)});
    }

    std::vector<std::size_t> starts{1};
    starts.insert(starts.end(), accepted_idx.begin(), accepted_idx.end());
    for (std::size_t k = 0; k < starts.size(); ++k) {
        Regime reg;
        reg.kind = RegimeKind::correlation;
        reg.start = starts[k];
        reg.end = k + 1 < starts.size() ? starts[k + 1] - 1 : n;
        reg.value = segment_r(x, y, reg.start, reg.end).value_or(0.0);
        if (reg.length() >= 4 && std::abs(reg.value) < 1.0) {
            const auto [lo, hi] = stats::fisher_ci(reg.value, reg.length(), confidence);
            reg.ci_low = lo;
            reg.ci_high = hi;
        }
        out.implied_r.push_back(channel_implied_r(x.subspan(reg.start - 1, reg.length()),
                                                  y.subspan(reg.start - 1, reg.length())));
        out.regimes.push_back(reg);
    }
    for (std::size_t k = 1; k < out.regimes.size(); ++k) {
        const auto& a = out.regimes[k - 1];
        auto& b = out.regimes[k];
        if (a.length() >= 4 && b.length() >= 4 && std::abs(a.value) < 1.0 &&
            std::abs(b.value) < 1.0) {
            b.shift_p_value = stats::fisher_compare(a.value, a.length(), b.value, b.length()).p_value;
        }
        const auto& winner = cands[winner_of.at(b.start)].point;
        out.change_points.push_back(
            ChangePoint{b.start, winner.index_value, b.shift_p_value, winner.provisional});
    }
    return out;
}

SrsdResult step_skipping_mode(const TimeSeries& x, const TimeSeries& y, const SrsdParams& params,
                              SkipSteps skip) {
    validate_params(params.detection);
    validate_params(params.correlation_params());
    if (x.size() != y.size()) throw DataError("run_srsd: x and y differ in length");
    if (x.size() < static_cast<std::size_t>(params.detection.l)) {
        throw DataError("series of length " + std::to_string(x.size()) + " is shorter than l = " +
                        std::to_string(params.detection.l));
    }

    SrsdResult result;
    const auto& dp = params.detection;
    auto steps = [&](const TimeSeries& input, SeriesSteps& out) {
        TimeSeries current = input;
        if (dp.prewhiten != Prewhitening::none) {
            const auto method = dp.prewhiten == Prewhitening::mpk ? Ar1Method::mpk : Ar1Method::ip4;
            out.ar1 = estimate_ar1(input, static_cast<std::size_t>(dp.m), method);
            current = prewhiten(input, out.ar1->alpha);
            result.index_offset = 1;
        }
        if (!skip.mean) {
            out.mean = detect_mean(current, dp);
            current = out.mean->residuals;
        }
        if (!skip.variance) {
            out.variance = detect_variance(current, dp);
            current = out.variance->normalized;
        }
        out.normalized = std::move(current);
    };
    steps(x, result.x);
    steps(y, result.y);
    result.correlation = detect_correlation(result.x.normalized, result.y.normalized,
                                            params.correlation_params(), params.confidence);
    return result;
}

SrsdResult run_srsd(const TimeSeries& x, const TimeSeries& y, const SrsdParams& params) {
    return step_skipping_mode(x, y, params, SkipSteps{});
}

std::vector<double> running_correlation(const TimeSeries& x, const TimeSeries& y,
                                        std::size_t window) {
    if (x.size() != y.size()) throw DataError("running correlation: length mismatch");
    if (window < 3) throw std::invalid_argument("running correlation window must be >= 3");
    if (x.size() < window) throw DataError("series shorter than the correlation window");
    return kernels::parallel::window_correlations(x.values(), y.values(), window);
}

std::string to_string(ChannelSource source) {
    return source == ChannelSource::sum ? "sum" : "diff";
}

ChannelSource parse_channel_source(const std::string& text) {
    if (text == "sum") return ChannelSource::sum;
    if (text == "diff") return ChannelSource::diff;
    throw DataError("unknown channel source '" + text + "'");
}

}  // namespace srsd
