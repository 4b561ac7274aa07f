#pragma once

#include <optional>
#include <span>
#include <vector>

#include "srsd/core.hpp"
#include "srsd/sequential.hpp"

namespace srsd {

struct MeanShiftResult {
    std::vector<Regime> regimes;  // kind = mean
    std::vector<ChangePoint> change_points;
    TimeSeries residuals;         // input minus stepwise trend
    std::vector<double> rsi;      // RSI at each index while a candidate was under test, else 0
    double avg_variance = 0.0;    // average variance of running l-point windows
    double delta = 0.0;

    friend bool operator==(const MeanShiftResult&, const MeanShiftResult&) = default;
};

/// Half-width of the band around the current regime mean:
/// t(1 - p/2, 2l - 2) * sqrt(2 * avg_var / l).
double threshold_delta(const DetectionParams& params, double avg_var);

/// Sequential t-test scan for shifts in the mean.
MeanShiftResult detect_mean(const TimeSeries& series, const DetectionParams& params);

/// Monitor seeded from at least l historical points. avg_variance defaults
/// to the running-window average of the history.
MonitorState init_mean_monitor(std::span<const double> history, const DetectionParams& params,
                               std::optional<double> avg_variance = std::nullopt);

/// Advance the monitor by one observation.
MonitorStatus monitor_mean(MonitorState& state, double new_value, const DetectionParams& params);

}  // namespace srsd
