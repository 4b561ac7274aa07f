#pragma once

// CSV ingestion and the versioned JSON result schema (docs/result-schema.md).

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "srsd/core.hpp"
#include "srsd/correlation.hpp"
#include "srsd/mean_shift.hpp"
#include "srsd/prewhiten.hpp"
#include "srsd/variance_shift.hpp"

namespace srsd::io {

inline constexpr int schema_version = 1;
inline constexpr const char* tool_name = "srsd";
inline constexpr const char* tool_version = "1.0.0";

struct ColumnSelection {
    std::vector<std::string> columns;        // value columns by header name
    std::optional<std::string> label_column; // defaults to the first column when unselected
};

/// Parses `count` value series from CSV text. With no explicit columns, the
/// first column is the label column when the header has more than `count`
/// columns and the next `count` columns are the values.
std::vector<TimeSeries> parse_csv_text(std::string_view text, const ColumnSelection& selection,
                                       std::size_t count);
std::vector<TimeSeries> parse_csv(const std::filesystem::path& path,
                                  const ColumnSelection& selection, std::size_t count);

/// Nine significant digits.
std::string format_number(double v);
double round9(double v);

/// Writes a header and rows of already formatted cells.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);

using nlohmann::json;

json to_json(const TimeSeries& s);
json to_json(const Regime& r);
json to_json(const ChangePoint& c);
json to_json(const DetectionParams& p);
json to_json(const Ar1Estimate& a);
json to_json(const MeanShiftResult& r);
json to_json(const VarianceShiftResult& r);
json to_json(const CandidateAudit& a);
json to_json(const CorrelationDetection& r);
json to_json(const SrsdResult& r);

TimeSeries time_series_from_json(const json& j);
Regime regime_from_json(const json& j);
ChangePoint change_point_from_json(const json& j);
DetectionParams params_from_json(const json& j);
Ar1Estimate ar1_from_json(const json& j);
MeanShiftResult mean_result_from_json(const json& j);
VarianceShiftResult variance_result_from_json(const json& j);
CorrelationDetection correlation_from_json(const json& j);
SrsdResult srsd_result_from_json(const json& j);

/// Top-level document: schema_version, tool, version, command, params, result.
json result_document(const std::string& command, const json& params, json result);

/// Deterministic serialization (2-space indent, trailing newline).
std::string dump(const json& j);

}  // namespace srsd::io
