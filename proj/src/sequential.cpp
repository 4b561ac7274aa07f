#include "srsd/sequential.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "srsd/stats.hpp"

namespace srsd::sequential {

namespace {

double working_value(const MonitorState& s, double x) {
    return s.kind == RegimeKind::variance ? x * x : x;
}

void absorb(MonitorState& s, double v) {
    s.current_regime_stats.push(v);
    s.recent.push_back(v);
    if (s.recent.size() > s.l) s.recent.pop_front();
}

std::optional<double> shift_p_value(const MonitorState& s, const RunningStats& before,
                                    std::span<const double> after_values) {
    RunningStats after;
    for (double v : after_values) after.push(v);
    if (s.kind == RegimeKind::variance) {
        return stats::variance_ratio_p_value(before.count, before.mean, after.count, after.mean);
    }
    return stats::two_sample_t_p_value(before.count, before.mean, before.sample_variance(),
                                       after.count, after.mean, after.sample_variance());
}

ChangePoint confirm(MonitorState& s, bool provisional) {
    PendingCandidate cand = std::move(*s.pending);
    s.pending.reset();

    const RunningStats before = s.current_regime_stats;
    s.regimes_so_far.push_back(
        Regime{s.current_start, cand.index - 1, s.kind, before.mean, std::nullopt, {}, {}});

    ChangePoint cp{cand.index, cand.index_value, shift_p_value(s, before, cand.values),
                   provisional};
    s.change_points.push_back(cp);

    s.current_start = cand.index;
    s.current_regime_stats = {};
    s.recent.clear();
    s.bootstrap_level.reset();
    for (double v : cand.values) absorb(s, v);
    return cp;
}

bool sign_flipped(const PendingCandidate& c) {
    return c.direction == ShiftDirection::up ? c.index_value <= 0.0 : c.index_value >= 0.0;
}

void scan(MonitorState& s, std::size_t index, double v) {
    const auto [up, down] = critical_levels(s);
    if (v > up || v < down) {
        const bool is_up = v > up;
        const double crit = is_up ? up : down;
        PendingCandidate c;
        c.index = index;
        c.direction = is_up ? ShiftDirection::up : ShiftDirection::down;
        c.critical_level = crit;
        c.index_value = (v - crit) / s.normalizer;
        c.points_tested = 1;
        c.values.push_back(v);
        s.trace[index - 1] = c.index_value;
        s.pending = std::move(c);
    } else {
        absorb(s, v);
        s.trace[index - 1] = 0.0;
    }
}

// Feeds one working value; rejected candidates replay their later points.
std::optional<ChangePoint> advance(MonitorState& s, std::size_t index, double v) {
    std::optional<ChangePoint> confirmed;
    std::deque<std::pair<std::size_t, double>> work{{index, v}};
    while (!work.empty()) {
        const auto [i, value] = work.front();
        work.pop_front();
        if (!s.pending) {
            scan(s, i, value);
            continue;
        }
        auto& c = *s.pending;
        c.values.push_back(value);
        c.index_value += (value - c.critical_level) / s.normalizer;
        ++c.points_tested;
        s.trace[i - 1] = c.index_value;
        if (sign_flipped(c)) {
            // The candidate was a fluctuation of the current regime.
            const std::size_t first = c.index;
            std::vector<double> replay(c.values.begin() + 1, c.values.end());
            absorb(s, c.values.front());
            s.pending.reset();
            for (std::size_t k = replay.size(); k-- > 0;) {
                work.emplace_front(first + 1 + k, replay[k]);
            }
        } else if (c.points_tested == s.l) {
            confirmed = confirm(s, false);
        }
    }
    return confirmed;
}

}  // namespace

double current_level(const MonitorState& s) {
    if (s.bootstrap_level && s.current_regime_stats.count < s.l) return *s.bootstrap_level;
    if (s.recent.empty()) throw std::logic_error("current_level on an empty regime");
    double sum = 0.0;
    for (double v : s.recent) sum += v;
    return sum / static_cast<double>(s.recent.size());
}

std::pair<double, double> critical_levels(const MonitorState& s) {
    const double level = current_level(s);
    if (s.kind == RegimeKind::variance) return {level * s.threshold, level / s.threshold};
    return {level + s.threshold, level - s.threshold};
}

MonitorState start(RegimeKind kind, std::size_t l, double threshold, double normalizer,
                   std::span<const double> history) {
    if (kind == RegimeKind::correlation) {
        throw std::invalid_argument("sequential scan supports mean and variance regimes");
    }
    if (l < 3) throw std::invalid_argument("cut-off length must be >= 3");
    if (history.size() < l) {
        throw DataError("monitor needs at least l = " + std::to_string(l) +
                        " historical points, got " + std::to_string(history.size()));
    }
    MonitorState s;
    s.kind = kind;
    s.l = l;
    s.threshold = threshold;
    s.normalizer = normalizer > 0.0 ? normalizer : static_cast<double>(l);

    double boot = 0.0;
    for (std::size_t i = 0; i < l; ++i) boot += working_value(s, history[i]);
    s.bootstrap_level = boot / static_cast<double>(l);

    // The first observation can never start a new regime.
    s.observed = 1;
    s.trace.push_back(0.0);
    absorb(s, working_value(s, history[0]));
    for (std::size_t i = 1; i < history.size(); ++i) push(s, history[i]);
    return s;
}

MonitorStatus push(MonitorState& s, double x) {
    if (s.l == 0 || s.observed == 0) throw std::logic_error("monitor state is not initialized");
    if (!std::isfinite(x)) throw DataError("non-finite observation");
    ++s.observed;
    s.trace.push_back(0.0);
    MonitorStatus status;
    status.confirmed = advance(s, s.observed, working_value(s, x));
    if (status.confirmed) {
        status.signal = MonitorSignal::confirmed;
    } else if (s.pending) {
        status.signal = MonitorSignal::candidate;
        status.candidate_index = s.pending->index;
        status.partial_index = s.pending->index_value;
    }
    return status;
}

SequentialOutcome finish(MonitorState s) {
    if (s.l == 0 || s.observed == 0) throw std::logic_error("monitor state is not initialized");
    // A tail candidate needs at least half a test window behind it.
    const std::size_t min_tail = (s.l + 1) / 2;
    while (s.pending && s.pending->points_tested < min_tail) {
        PendingCandidate c = std::move(*s.pending);
        s.pending.reset();
        absorb(s, c.values.front());
        for (std::size_t k = 1; k < c.values.size(); ++k) advance(s, c.index + k, c.values[k]);
    }
    if (s.pending) confirm(s, true);
    s.regimes_so_far.push_back(Regime{s.current_start, s.observed, s.kind,
                                      s.current_regime_stats.mean, std::nullopt, {}, {}});
    return {std::move(s.regimes_so_far), std::move(s.change_points), std::move(s.trace)};
}

}  // namespace srsd::sequential
