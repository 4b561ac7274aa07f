#include "srsd/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace srsd::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        out.emplace_back(trim(line.substr(pos, comma == std::string_view::npos ? comma : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::optional<double> parse_number(std::string_view cell) {
    if (cell.empty()) return std::nullopt;
    if (cell.front() == '+') cell.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError("column '" + name + "' not found in header");
    return static_cast<std::size_t>(it - header.begin());
}

json number(double v) { return json(round9(v)); }

json number_array(std::span<const double> v) {
    json a = json::array();
    for (double x : v) a.push_back(round9(x));
    return a;
}

std::optional<double> optional_number(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

json optional_number_json(const std::optional<double>& v) {
    return v ? number(*v) : json(nullptr);
}

std::vector<double> doubles(const json& j) { return j.get<std::vector<double>>(); }

}  // namespace

std::vector<TimeSeries> parse_csv_text(std::string_view text, const ColumnSelection& selection,
                                       std::size_t count) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw DataError("empty CSV: missing header row");
    if (lines.front().starts_with("\xEF\xBB\xBF")) lines.front().remove_prefix(3);

    const auto header = split_fields(lines.front());
    std::vector<std::size_t> value_cols;
    std::optional<std::size_t> label_col;
    if (selection.label_column) label_col = column_index(header, *selection.label_column);
    if (!selection.columns.empty()) {
        if (selection.columns.size() != count) {
            throw DataError("expected " + std::to_string(count) + " value column(s), got " +
                            std::to_string(selection.columns.size()));
        }
        for (const auto& name : selection.columns) value_cols.push_back(column_index(header, name));
        if (!label_col && std::find(value_cols.begin(), value_cols.end(), 0) == value_cols.end() &&
            header.size() > count) {
            label_col = 0;
        }
    } else {
        std::size_t first = 0;
        if (label_col) {
            first = *label_col == 0 ? 1 : 0;
        } else if (header.size() > count) {
            label_col = 0;
            first = 1;
        }
        for (std::size_t c = first; c < header.size() && value_cols.size() < count; ++c) {
            if (label_col && c == *label_col) continue;
            value_cols.push_back(c);
        }
        if (value_cols.size() < count) {
            throw DataError("CSV has too few columns for " + std::to_string(count) + " series");
        }
    }

    std::vector<std::vector<double>> values(count);
    std::vector<double> labels;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        const std::size_t line_no = row + 1;
        if (trim(lines[row]).empty()) continue;
        const auto fields = split_fields(lines[row]);
        if (fields.size() != header.size()) {
            throw DataError("row " + std::to_string(line_no) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(header.size()));
        }
        auto cell = [&](std::size_t col) {
            const auto v = parse_number(fields[col]);
            if (!v) {
                throw DataError("row " + std::to_string(line_no) + ", column '" + header[col] +
                                "': non-numeric value '" + fields[col] + "'");
            }
            return *v;
        };
        for (std::size_t k = 0; k < count; ++k) values[k].push_back(cell(value_cols[k]));
        if (label_col) labels.push_back(cell(*label_col));
    }
    if (values.front().empty()) throw DataError("no observations");

    std::vector<TimeSeries> out;
    for (std::size_t k = 0; k < count; ++k) {
        std::optional<std::vector<double>> lab;
        if (label_col) lab = labels;
        out.emplace_back(std::move(values[k]), std::move(lab), header[value_cols[k]]);
    }
    return out;
}

std::vector<TimeSeries> parse_csv(const std::filesystem::path& path,
                                  const ColumnSelection& selection, std::size_t count) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv_text(buf.str(), selection, count);
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

double round9(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

json to_json(const TimeSeries& s) {
    json j;
    j["name"] = s.name();
    j["values"] = number_array(s.values());
    j["labels"] = s.labels() ? number_array(*s.labels()) : json(nullptr);
    return j;
}

json to_json(const Regime& r) {
    return {{"start", r.start},
            {"end", r.end},
            {"kind", to_string(r.kind)},
            {"value", number(r.value)},
            {"shift_p_value", optional_number_json(r.shift_p_value)},
            {"ci_low", optional_number_json(r.ci_low)},
            {"ci_high", optional_number_json(r.ci_high)}};
}

json to_json(const ChangePoint& c) {
    return {{"index", c.index},
            {"index_value", number(c.index_value)},
            {"p_value", optional_number_json(c.p_value)},
            {"provisional", c.provisional}};
}

json to_json(const DetectionParams& p) {
    return {{"p", number(p.p)}, {"l", p.l}, {"prewhiten", to_string(p.prewhiten)}, {"m", p.m}};
}

json to_json(const Ar1Estimate& a) {
    return {{"alpha", number(a.alpha)},
            {"method", to_string(a.method)},
            {"m", a.m},
            {"n_subsamples", a.n_subsamples},
            {"clamped", a.clamped}};
}

json to_json(const MeanShiftResult& r) {
    json regimes = json::array(), cps = json::array();
    for (const auto& g : r.regimes) regimes.push_back(to_json(g));
    for (const auto& c : r.change_points) cps.push_back(to_json(c));
    return {{"regimes", regimes},         {"change_points", cps},
            {"residuals", to_json(r.residuals)}, {"rsi", number_array(r.rsi)},
            {"avg_variance", number(r.avg_variance)}, {"delta", number(r.delta)}};
}

json to_json(const VarianceShiftResult& r) {
    json regimes = json::array(), cps = json::array();
    for (const auto& g : r.regimes) regimes.push_back(to_json(g));
    for (const auto& c : r.change_points) cps.push_back(to_json(c));
    return {{"regimes", regimes},
            {"change_points", cps},
            {"normalized", to_json(r.normalized)},
            {"rssi", number_array(r.rssi)},
            {"f_critical", number(r.f_critical)}};
}

json to_json(const CandidateAudit& a) {
    return {{"source", to_string(a.source)},
            {"index", a.index},
            {"p_value", optional_number_json(a.p_value)},
            {"accepted", a.accepted}};
}

json to_json(const CorrelationDetection& r) {
    json regimes = json::array(), cps = json::array(), cands = json::array();
    for (const auto& g : r.regimes) regimes.push_back(to_json(g));
    for (const auto& c : r.change_points) cps.push_back(to_json(c));
    for (const auto& a : r.candidates) cands.push_back(to_json(a));
    return {{"regimes", regimes},
            {"change_points", cps},
            {"candidates", cands},
            {"implied_r", number_array(r.implied_r)},
            {"sum_channel", r.sum_channel ? to_json(*r.sum_channel) : json(nullptr)},
            {"diff_channel", r.diff_channel ? to_json(*r.diff_channel) : json(nullptr)}};
}

namespace {
json to_json(const SeriesSteps& s) {
    return {{"ar1", s.ar1 ? io::to_json(*s.ar1) : json(nullptr)},
            {"mean", s.mean ? io::to_json(*s.mean) : json(nullptr)},
            {"variance", s.variance ? io::to_json(*s.variance) : json(nullptr)},
            {"normalized", io::to_json(s.normalized)}};
}

SeriesSteps series_steps_from_json(const json& j) {
    SeriesSteps s;
    if (!j.at("ar1").is_null()) s.ar1 = ar1_from_json(j.at("ar1"));
    if (!j.at("mean").is_null()) s.mean = mean_result_from_json(j.at("mean"));
    if (!j.at("variance").is_null()) s.variance = variance_result_from_json(j.at("variance"));
    s.normalized = time_series_from_json(j.at("normalized"));
    return s;
}

template <typename T, typename F>
std::vector<T> array_from_json(const json& j, F&& f) {
    std::vector<T> out;
    for (const auto& e : j) out.push_back(f(e));
    return out;
}
}  // namespace

json to_json(const SrsdResult& r) {
    return {{"index_offset", r.index_offset},
            {"x", to_json(r.x)},
            {"y", to_json(r.y)},
            {"correlation", to_json(r.correlation)}};
}

TimeSeries time_series_from_json(const json& j) {
    std::optional<std::vector<double>> labels;
    if (!j.at("labels").is_null()) labels = doubles(j.at("labels"));
    return TimeSeries(doubles(j.at("values")), std::move(labels), j.at("name").get<std::string>());
}

Regime regime_from_json(const json& j) {
    Regime r;
    r.start = j.at("start").get<std::size_t>();
    r.end = j.at("end").get<std::size_t>();
    r.kind = parse_regime_kind(j.at("kind").get<std::string>());
    r.value = j.at("value").get<double>();
    r.shift_p_value = optional_number(j, "shift_p_value");
    r.ci_low = optional_number(j, "ci_low");
    r.ci_high = optional_number(j, "ci_high");
    return r;
}

ChangePoint change_point_from_json(const json& j) {
    return ChangePoint{j.at("index").get<std::size_t>(), j.at("index_value").get<double>(),
                       optional_number(j, "p_value"), j.at("provisional").get<bool>()};
}

DetectionParams params_from_json(const json& j) {
    DetectionParams p;
    p.p = j.at("p").get<double>();
    p.l = j.at("l").get<int>();
    p.prewhiten = parse_prewhitening(j.at("prewhiten").get<std::string>());
    p.m = j.at("m").get<int>();
    return p;
}

Ar1Estimate ar1_from_json(const json& j) {
    Ar1Estimate a;
    a.alpha = j.at("alpha").get<double>();
    const auto method = j.at("method").get<std::string>();
    a.method = method == "mpk" ? Ar1Method::mpk : method == "ip4" ? Ar1Method::ip4 : Ar1Method::ols;
    a.m = j.at("m").get<std::size_t>();
    a.n_subsamples = j.at("n_subsamples").get<std::size_t>();
    a.clamped = j.at("clamped").get<bool>();
    return a;
}

MeanShiftResult mean_result_from_json(const json& j) {
    MeanShiftResult r;
    r.regimes = array_from_json<Regime>(j.at("regimes"), regime_from_json);
    r.change_points = array_from_json<ChangePoint>(j.at("change_points"), change_point_from_json);
    r.residuals = time_series_from_json(j.at("residuals"));
    r.rsi = doubles(j.at("rsi"));
    r.avg_variance = j.at("avg_variance").get<double>();
    r.delta = j.at("delta").get<double>();
    return r;
}

VarianceShiftResult variance_result_from_json(const json& j) {
    VarianceShiftResult r;
    r.regimes = array_from_json<Regime>(j.at("regimes"), regime_from_json);
    r.change_points = array_from_json<ChangePoint>(j.at("change_points"), change_point_from_json);
    r.normalized = time_series_from_json(j.at("normalized"));
    r.rssi = doubles(j.at("rssi"));
    r.f_critical = j.at("f_critical").get<double>();
    return r;
}

CorrelationDetection correlation_from_json(const json& j) {
    CorrelationDetection r;
    r.regimes = array_from_json<Regime>(j.at("regimes"), regime_from_json);
    r.change_points = array_from_json<ChangePoint>(j.at("change_points"), change_point_from_json);
    r.candidates = array_from_json<CandidateAudit>(j.at("candidates"), [](const json& e) {
        return CandidateAudit{parse_channel_source(e.at("source").get<std::string>()),
                              e.at("index").get<std::size_t>(), optional_number(e, "p_value"),
                              e.at("accepted").get<bool>()};
    });
    r.implied_r = doubles(j.at("implied_r"));
    if (!j.at("sum_channel").is_null()) r.sum_channel = variance_result_from_json(j.at("sum_channel"));
    if (!j.at("diff_channel").is_null()) r.diff_channel = variance_result_from_json(j.at("diff_channel"));
    return r;
}

SrsdResult srsd_result_from_json(const json& j) {
    SrsdResult r;
    r.index_offset = j.at("index_offset").get<std::size_t>();
    r.x = series_steps_from_json(j.at("x"));
    r.y = series_steps_from_json(j.at("y"));
    r.correlation = correlation_from_json(j.at("correlation"));
    return r;
}

json result_document(const std::string& command, const json& params, json result) {
    return {{"schema_version", schema_version},
            {"tool", tool_name},
            {"version", tool_version},
            {"command", command},
            {"params", params},
            {"result", std::move(result)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace srsd::io
