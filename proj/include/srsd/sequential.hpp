#pragma once

// The sequential scan shared by the mean and variance detectors. A regime
// level (mean of x, or mean of x^2) brackets each new observation between two
// critical levels; an observation outside them opens a candidate whose
// cumulative index must keep its sign for l points to be confirmed.

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "srsd/core.hpp"

namespace srsd {

enum class ShiftDirection { up, down };

/// Welford accumulator over the detector's working values.
struct RunningStats {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double v) {
        ++count;
        const double d = v - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (v - mean);
    }
    double sample_variance() const {
        return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
    }

    friend bool operator==(const RunningStats&, const RunningStats&) = default;
};

struct PendingCandidate {
    std::size_t index = 0;
    ShiftDirection direction = ShiftDirection::up;
    double index_value = 0.0;
    std::size_t points_tested = 0;
    double critical_level = 0.0;
    std::vector<double> values;  // working values under test, candidate first

    friend bool operator==(const PendingCandidate&, const PendingCandidate&) = default;
};

/// Resumable detector state for one stream. Owned and mutated by a single
/// caller; copy it to branch.
struct MonitorState {
    RegimeKind kind = RegimeKind::mean;
    std::size_t l = 0;
    double threshold = 0.0;   // delta (mean) or F_cr (variance)
    double normalizer = 1.0;  // l * s_l (mean) or l (variance)

    std::vector<Regime> regimes_so_far;
    std::size_t current_start = 1;
    RunningStats current_regime_stats;
    std::deque<double> recent;  // at most l most recent working values of the current regime
    std::optional<double> bootstrap_level;
    std::optional<PendingCandidate> pending;

    std::vector<ChangePoint> change_points;
    std::vector<double> trace;
    std::size_t observed = 0;

    bool initialized() const noexcept { return l > 0 && observed > 0; }

    friend bool operator==(const MonitorState&, const MonitorState&) = default;
};

enum class MonitorSignal { stable, candidate, confirmed };

struct MonitorStatus {
    MonitorSignal signal = MonitorSignal::stable;
    std::size_t candidate_index = 0;
    double partial_index = 0.0;
    std::optional<ChangePoint> confirmed;
};

/// Regimes, change-points and index trace of a finished scan.
struct SequentialOutcome {
    std::vector<Regime> regimes;
    std::vector<ChangePoint> change_points;
    std::vector<double> trace;
};

namespace sequential {

/// Empty state; history[0..l) seeds the bootstrap level of the first regime
/// and every history value is then scanned.
MonitorState start(RegimeKind kind, std::size_t l, double threshold, double normalizer,
                   std::span<const double> history);

/// Scan one raw observation (squared internally for variance states).
MonitorStatus push(MonitorState& state, double x);

/// Critical levels around the current regime level.
std::pair<double, double> critical_levels(const MonitorState& state);

/// Level of the current regime as used by the scan.
double current_level(const MonitorState& state);

/// Closes the stream. A pending candidate tested on at least ceil(l/2)
/// points is confirmed as provisional; shorter ones are rejected and their
/// later points rescanned.
SequentialOutcome finish(MonitorState state);

}  // namespace sequential

}  // namespace srsd
