#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

/// Sequential regime shift detection in the mean, variance and correlation
/// of time series.
namespace srsd {

/// Raised when detection parameters are out of range. field() names the
/// offending parameter.
class ParamError : public std::invalid_argument {
public:
    ParamError(std::string field, const std::string& what)
        : std::invalid_argument(what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Raised when input data violates a precondition (length, finiteness,
/// degenerate variance, malformed files).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ordered real observations with optional strictly increasing time labels.
class TimeSeries {
public:
    TimeSeries() = default;
    explicit TimeSeries(std::vector<double> values,
                        std::optional<std::vector<double>> labels = std::nullopt,
                        std::string name = {});

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    const std::optional<std::vector<double>>& labels() const noexcept { return labels_; }
    const std::string& name() const noexcept { return name_; }

    /// Label of the 1-based position, or the position itself when unlabeled.
    double label_at(std::size_t index) const;

    /// Copy of [first, first + count) (0-based offsets), labels carried along.
    TimeSeries slice(std::size_t first, std::size_t count) const;

    /// Same labels and name, new values of equal length.
    TimeSeries with_values(std::vector<double> values) const;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<double> values_;
    std::optional<std::vector<double>> labels_;
    std::string name_;
};

enum class Prewhitening { none, mpk, ip4 };

struct DetectionParams {
    double p = 0.05;
    int l = 20;
    Prewhitening prewhiten = Prewhitening::none;
    int m = 10;

    friend bool operator==(const DetectionParams&, const DetectionParams&) = default;
};

/// Returns params unchanged or throws ParamError naming the bad field.
DetectionParams validate_params(const DetectionParams& params);

enum class RegimeKind { mean, variance, correlation };

/// A contiguous span [start, end] (1-based, inclusive) over which one
/// statistic is treated as constant.
struct Regime {
    std::size_t start = 1;
    std::size_t end = 1;
    RegimeKind kind = RegimeKind::mean;
    double value = 0.0;
    std::optional<double> shift_p_value;
    std::optional<double> ci_low;
    std::optional<double> ci_high;

    std::size_t length() const noexcept { return end - start + 1; }

    friend bool operator==(const Regime&, const Regime&) = default;
};

/// First index of a new regime with the confirming RSI/RSSI value.
struct ChangePoint {
    std::size_t index = 2;
    double index_value = 0.0;
    std::optional<double> p_value;
    bool provisional = false;

    friend bool operator==(const ChangePoint&, const ChangePoint&) = default;
};

/// Throws DataError unless the regimes tile [1, series_length] in order.
void check_partition(std::size_t series_length, std::span<const Regime> regimes);

/// Materializes the stepwise trend: each index takes its regime's value.
TimeSeries regimes_to_stepwise(std::size_t series_length, std::span<const Regime> regimes);

std::string to_string(Prewhitening mode);
std::string to_string(RegimeKind kind);
Prewhitening parse_prewhitening(const std::string& text);
RegimeKind parse_regime_kind(const std::string& text);

}  // namespace srsd
