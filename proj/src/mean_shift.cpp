#include "srsd/mean_shift.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "srsd/stats.hpp"

namespace srsd {

namespace {

void require_mean_state(const MonitorState& state, const DetectionParams& params) {
    if (!state.initialized()) throw std::logic_error("mean monitor is not initialized");
    if (state.kind != RegimeKind::mean) throw std::logic_error("state is not a mean monitor");
    if (state.l != static_cast<std::size_t>(params.l)) {
        throw ParamError("l", "params.l differs from the monitor's cut-off length");
    }
}

}  // namespace

double threshold_delta(const DetectionParams& params, double avg_var) {
    validate_params(params);
    if (avg_var < 0.0) throw std::invalid_argument("average variance must be >= 0");
    const double t = stats::student_t_quantile(1.0 - params.p / 2.0, 2 * params.l - 2);
    return t * std::sqrt(2.0 * avg_var / static_cast<double>(params.l));
}

MonitorState init_mean_monitor(std::span<const double> history, const DetectionParams& params,
                               std::optional<double> avg_variance) {
    validate_params(params);
    const auto l = static_cast<std::size_t>(params.l);
    if (history.size() < l) {
        throw DataError("series of length " + std::to_string(history.size()) +
                        " is shorter than l = " + std::to_string(l));
    }
    const double avg_var = avg_variance ? *avg_variance : stats::running_avg_variance(history, params.l);
    const double delta = threshold_delta(params, avg_var);
    const double normalizer = static_cast<double>(l) * std::sqrt(avg_var);
    return sequential::start(RegimeKind::mean, l, delta, normalizer, history);
}

MonitorStatus monitor_mean(MonitorState& state, double new_value, const DetectionParams& params) {
    require_mean_state(state, params);
    return sequential::push(state, new_value);
}

MeanShiftResult detect_mean(const TimeSeries& series, const DetectionParams& params) {
    validate_params(params);
    const double avg_var = stats::running_avg_variance(series.values(), params.l);
    auto state = init_mean_monitor(series.values(), params, avg_var);
    const double delta = state.threshold;
    auto outcome = sequential::finish(std::move(state));

    MeanShiftResult result;
    result.avg_variance = avg_var;
    result.delta = delta;
    result.rsi = std::move(outcome.trace);
    result.change_points = std::move(outcome.change_points);
    result.regimes = std::move(outcome.regimes);

    const auto x = series.values();
    std::vector<double> residuals(x.size());
    std::vector<double> seg_var(result.regimes.size(), 0.0);
    for (std::size_t k = 0; k < result.regimes.size(); ++k) {
        auto& r = result.regimes[k];
        const auto seg = x.subspan(r.start - 1, r.length());
        r.value = stats::mean(seg);
        for (std::size_t i = r.start - 1; i < r.end; ++i) residuals[i] = x[i] - r.value;
        if (seg.size() > 1) seg_var[k] = stats::sample_variance(seg);
    }
    for (std::size_t k = 1; k < result.regimes.size(); ++k) {
        const auto& a = result.regimes[k - 1];
        auto& b = result.regimes[k];
        b.shift_p_value = stats::two_sample_t_p_value(a.length(), a.value, seg_var[k - 1],
                                                      b.length(), b.value, seg_var[k]);
        result.change_points[k - 1].p_value = b.shift_p_value;
    }
    result.residuals = series.with_values(std::move(residuals));
    return result;
}

}  // namespace srsd
