#include "srsd/variance_shift.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "srsd/stats.hpp"

namespace srsd {

double critical_f(const DetectionParams& params) {
    validate_params(params);
    return stats::f_quantile(1.0 - params.p / 2.0, params.l - 1, params.l - 1);
}

std::pair<double, double> critical_variances(double current_var, const DetectionParams& params) {
    if (!(current_var > 0.0)) throw std::invalid_argument("current variance must be > 0");
    const double f = critical_f(params);
    return {current_var * f, current_var / f};
}

MonitorState init_variance_monitor(std::span<const double> history, const DetectionParams& params) {
    validate_params(params);
    const auto l = static_cast<std::size_t>(params.l);
    if (history.size() < l) {
        throw DataError("series of length " + std::to_string(history.size()) +
                        " is shorter than l = " + std::to_string(l));
    }
    return sequential::start(RegimeKind::variance, l, critical_f(params), static_cast<double>(l),
                             history);
}

MonitorStatus monitor_variance(MonitorState& state, double new_value,
                               const DetectionParams& params) {
    if (!state.initialized()) throw std::logic_error("variance monitor is not initialized");
    if (state.kind != RegimeKind::variance) throw std::logic_error("state is not a variance monitor");
    if (state.l != static_cast<std::size_t>(params.l)) {
        throw ParamError("l", "params.l differs from the monitor's cut-off length");
    }
    return sequential::push(state, new_value);
}

VarianceShiftResult detect_variance(const TimeSeries& residuals, const DetectionParams& params) {
    validate_params(params);
    const auto x = residuals.values();
    if (x.size() < static_cast<std::size_t>(params.l)) {
        throw DataError("series of length " + std::to_string(x.size()) + " is shorter than l = " +
                        std::to_string(params.l));
    }
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) {
        throw DataError("variance detection on an all-zero series");
    }
    auto state = init_variance_monitor(x, params);
    const double f = state.threshold;
    auto outcome = sequential::finish(std::move(state));

    VarianceShiftResult result;
    result.f_critical = f;
    result.rssi = std::move(outcome.trace);
    result.change_points = std::move(outcome.change_points);
    result.regimes = std::move(outcome.regimes);

    std::vector<double> normalized(x.size());
    for (auto& r : result.regimes) {
        r.value = stats::mean_of_squares(x.subspan(r.start - 1, r.length()));
        if (!(r.value > 0.0)) {
            throw DataError("zero variance in regime [" + std::to_string(r.start) + ", " +
                            std::to_string(r.end) + "]; cannot normalize");
        }
        const double sd = std::sqrt(r.value);
        for (std::size_t i = r.start - 1; i < r.end; ++i) normalized[i] = x[i] / sd;
    }
    for (std::size_t k = 1; k < result.regimes.size(); ++k) {
        const auto& a = result.regimes[k - 1];
        auto& b = result.regimes[k];
        b.shift_p_value = stats::variance_ratio_p_value(a.length(), a.value, b.length(), b.value);
        result.change_points[k - 1].p_value = b.shift_p_value;
    }
    result.normalized = residuals.with_values(std::move(normalized));
    return result;
}

}  // namespace srsd
