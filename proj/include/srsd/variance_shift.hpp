#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "srsd/core.hpp"
#include "srsd/sequential.hpp"

namespace srsd {

struct VarianceShiftResult {
    std::vector<Regime> regimes;  // kind = variance, value = mean of squares
    std::vector<ChangePoint> change_points;
    TimeSeries normalized;        // input divided by its regime standard deviation
    std::vector<double> rssi;
    double f_critical = 1.0;

    friend bool operator==(const VarianceShiftResult&, const VarianceShiftResult&) = default;
};

/// F(1 - p/2, l - 1, l - 1).
double critical_f(const DetectionParams& params);

/// {current_var * F_cr, current_var / F_cr}.
std::pair<double, double> critical_variances(double current_var, const DetectionParams& params);

/// Sequential F-test scan on squared residuals. Residuals are expected to be
/// centred within their mean regimes.
VarianceShiftResult detect_variance(const TimeSeries& residuals, const DetectionParams& params);

MonitorState init_variance_monitor(std::span<const double> history, const DetectionParams& params);
MonitorStatus monitor_variance(MonitorState& state, double new_value,
                               const DetectionParams& params);

}  // namespace srsd
