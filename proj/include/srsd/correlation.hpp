#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "srsd/core.hpp"
#include "srsd/mean_shift.hpp"
#include "srsd/prewhiten.hpp"
#include "srsd/variance_shift.hpp"

namespace srsd {

enum class ChannelSource { sum, diff };

struct CandidateAudit {
    ChannelSource source = ChannelSource::sum;
    std::size_t index = 0;
    std::optional<double> p_value;  // Fisher z p-value of the split at this index
    bool accepted = false;

    friend bool operator==(const CandidateAudit&, const CandidateAudit&) = default;
};

struct CorrelationDetection {
    std::vector<Regime> regimes;  // kind = correlation
    std::vector<ChangePoint> change_points;
    std::vector<CandidateAudit> candidates;
    std::vector<double> implied_r;  // (var(sum) - var(diff)) / (var(sum) + var(diff)) per regime
    std::optional<VarianceShiftResult> sum_channel;  // empty when the channel is degenerate
    std::optional<VarianceShiftResult> diff_channel;

    friend bool operator==(const CorrelationDetection&, const CorrelationDetection&) = default;
};

/// Parameters for the whole three-step run. The correlation step shares the
/// detection parameters unless an override is given.
struct SrsdParams {
    DetectionParams detection;
    std::optional<DetectionParams> correlation;
    double confidence = 0.90;

    const DetectionParams& correlation_params() const {
        return correlation ? *correlation : detection;
    }

    friend bool operator==(const SrsdParams&, const SrsdParams&) = default;
};

struct SkipSteps {
    bool mean = false;
    bool variance = false;

    friend bool operator==(const SkipSteps&, const SkipSteps&) = default;
};

/// Per-input intermediate results of steps one and two.
struct SeriesSteps {
    std::optional<Ar1Estimate> ar1;
    std::optional<MeanShiftResult> mean;
    std::optional<VarianceShiftResult> variance;
    TimeSeries normalized;

    friend bool operator==(const SeriesSteps&, const SeriesSteps&) = default;
};

struct SrsdResult {
    SeriesSteps x;
    SeriesSteps y;
    CorrelationDetection correlation;
    /// 1 when prewhitening dropped the first observation: index i of every
    /// result corresponds to input position i + index_offset.
    std::size_t index_offset = 0;

    friend bool operator==(const SrsdResult&, const SrsdResult&) = default;
};

/// Pointwise x + y and x - y.
std::pair<TimeSeries, TimeSeries> sum_diff_channels(const TimeSeries& x_norm,
                                                    const TimeSeries& y_norm);

/// Step three on already normalized inputs.
CorrelationDetection detect_correlation(const TimeSeries& x_norm, const TimeSeries& y_norm,
                                        const DetectionParams& params, double confidence = 0.90);

SrsdResult run_srsd(const TimeSeries& x, const TimeSeries& y, const SrsdParams& params);

/// run_srsd with the named steps replaced by identity transforms.
SrsdResult step_skipping_mode(const TimeSeries& x, const TimeSeries& y, const SrsdParams& params,
                              SkipSteps skip);

/// Pearson r of every contiguous window.
std::vector<double> running_correlation(const TimeSeries& x, const TimeSeries& y,
                                        std::size_t window);

std::string to_string(ChannelSource source);
ChannelSource parse_channel_source(const std::string& text);

}  // namespace srsd
