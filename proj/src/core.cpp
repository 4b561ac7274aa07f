#include "srsd/core.hpp"

#include <cmath>

namespace srsd {

TimeSeries::TimeSeries(std::vector<double> values, std::optional<std::vector<double>> labels,
                       std::string name)
    : values_(std::move(values)), labels_(std::move(labels)), name_(std::move(name)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DataError("non-finite value at position " + std::to_string(i + 1));
        }
    }
    if (labels_) {
        if (labels_->size() != values_.size()) {
            throw DataError("label count does not match value count");
        }
        for (std::size_t i = 1; i < labels_->size(); ++i) {
            if (!((*labels_)[i] > (*labels_)[i - 1])) {
                throw DataError("labels must be strictly increasing (position " +
                                std::to_string(i + 1) + ")");
            }
        }
    }
}

double TimeSeries::label_at(std::size_t index) const {
    if (index < 1 || index > values_.size()) {
        throw std::out_of_range("label_at: index out of range");
    }
    return labels_ ? (*labels_)[index - 1] : static_cast<double>(index);
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t count) const {
    if (first + count > values_.size()) {
        throw std::out_of_range("slice out of range");
    }
    std::vector<double> v(values_.begin() + first, values_.begin() + first + count);
    std::optional<std::vector<double>> lab;
    if (labels_) {
        lab.emplace(labels_->begin() + first, labels_->begin() + first + count);
    }
    return TimeSeries(std::move(v), std::move(lab), name_);
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
    if (values.size() != values_.size()) {
        throw DataError("with_values: length mismatch");
    }
    return TimeSeries(std::move(values), labels_, name_);
}

DetectionParams validate_params(const DetectionParams& params) {
    if (!(params.p > 0.0 && params.p < 1.0)) {
        throw ParamError("p", "p must lie in (0, 1), got " + std::to_string(params.p));
    }
    if (params.l < 3) {
        throw ParamError("l", "l must be at least 3, got " + std::to_string(params.l));
    }
    if (params.prewhiten != Prewhitening::none && (params.m < 5 || params.m >= params.l)) {
        throw ParamError("m", "m must satisfy 5 <= m < l when prewhitening, got " +
                                  std::to_string(params.m));
    }
    return params;
}

void check_partition(std::size_t series_length, std::span<const Regime> regimes) {
    std::size_t expected = 1;
    for (const auto& r : regimes) {
        if (r.start != expected) {
            throw DataError(r.start > expected ? "gap before regime starting at " +
                                                     std::to_string(r.start)
                                               : "overlap at regime starting at " +
                                                     std::to_string(r.start));
        }
        if (r.end < r.start) {
            throw DataError("regime ends before it starts");
        }
        expected = r.end + 1;
    }
    if (expected != series_length + 1) {
        throw DataError("regimes cover [1, " + std::to_string(expected - 1) +
                        "] but the series has length " + std::to_string(series_length));
    }
}

TimeSeries regimes_to_stepwise(std::size_t series_length, std::span<const Regime> regimes) {
    check_partition(series_length, regimes);
    std::vector<double> out;
    out.reserve(series_length);
    for (const auto& r : regimes) {
        out.insert(out.end(), r.length(), r.value);
    }
    return TimeSeries(std::move(out));
}

std::string to_string(Prewhitening mode) {
    switch (mode) {
    case Prewhitening::none: return "none";
    case Prewhitening::mpk: return "mpk";
    case Prewhitening::ip4: return "ip4";
    }
    return "none";
}

std::string to_string(RegimeKind kind) {
    switch (kind) {
    case RegimeKind::mean: return "mean";
    case RegimeKind::variance: return "variance";
    case RegimeKind::correlation: return "correlation";
    }
    return "mean";
}

Prewhitening parse_prewhitening(const std::string& text) {
    if (text == "none") return Prewhitening::none;
    if (text == "mpk") return Prewhitening::mpk;
    if (text == "ip4") return Prewhitening::ip4;
    throw ParamError("prewhiten", "unknown prewhitening mode '" + text + "'");
}

RegimeKind parse_regime_kind(const std::string& text) {
    if (text == "mean") return RegimeKind::mean;
    if (text == "variance") return RegimeKind::variance;
    if (text == "correlation") return RegimeKind::correlation;
    throw DataError("unknown regime kind '" + text + "'");
}

}  // namespace srsd
