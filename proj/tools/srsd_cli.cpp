// srsd: regime shifts in mean, variance and correlation from CSV series.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srsd/correlation.hpp"
#include "srsd/io.hpp"
#include "srsd/mean_shift.hpp"
#include "srsd/prewhiten.hpp"
#include "srsd/synthgen.hpp"
#include "srsd/variance_shift.hpp"

namespace {

using namespace srsd;
using io::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input;
    std::vector<std::string> columns;
    std::string labels;
    double p = 0.05;
    int l = 20;
    std::string prewhiten = "none";
    int m = 10;
    std::optional<double> p_corr;
    std::optional<int> l_corr;
    double confidence = 0.90;
    std::vector<std::string> skip;
    std::string output;
    std::string format = "json";
    std::uint64_t seed = 0;
    std::size_t window = 21;
    std::string traces;
    bool remove_mean = false;
};

DetectionParams detection(const Options& o) {
    return validate_params({o.p, o.l, parse_prewhitening(o.prewhiten), o.m});
}

SrsdParams srsd_params(const Options& o) {
    SrsdParams sp;
    sp.detection = detection(o);
    if (o.p_corr || o.l_corr) {
        DetectionParams c = sp.detection;
        if (o.p_corr) c.p = *o.p_corr;
        if (o.l_corr) c.l = *o.l_corr;
        c.prewhiten = Prewhitening::none;
        sp.correlation = validate_params(c);
    }
    if (!(o.confidence > 0.0 && o.confidence < 1.0)) {
        throw ParamError("confidence", "confidence must be in (0, 1)");
    }
    sp.confidence = o.confidence;
    return sp;
}

json srsd_params_json(const SrsdParams& sp) {
    json j = io::to_json(sp.detection);
    j["correlation"] = sp.correlation ? io::to_json(*sp.correlation) : json(nullptr);
    j["confidence"] = io::round9(sp.confidence);
    return j;
}

std::vector<TimeSeries> read_input(const Options& o, std::size_t count) {
    if (o.input.empty()) throw UsageError("--input is required");
    io::ColumnSelection sel;
    sel.columns = o.columns;
    if (!o.labels.empty()) sel.label_column = o.labels;
    if (!sel.columns.empty() && sel.columns.size() != count) {
        throw UsageError("expected " + std::to_string(count) + " value column(s) in --columns");
    }
    return io::parse_csv(o.input, sel, count);
}

void write_output(const Options& o, const std::string& text) {
    if (o.output.empty() || o.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw DataError("cannot write '" + o.output + "'");
    out << text;
}

std::string cell(const std::optional<double>& v) { return v ? io::format_number(*v) : ""; }

std::string regimes_csv(const std::vector<Regime>& regimes, const TimeSeries& s,
                        std::size_t offset) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : regimes) {
        rows.push_back({std::to_string(r.start + offset), std::to_string(r.end + offset),
                        io::format_number(s.label_at(r.start)), io::format_number(s.label_at(r.end)),
                        to_string(r.kind), io::format_number(r.value), cell(r.shift_p_value),
                        cell(r.ci_low), cell(r.ci_high)});
    }
    return io::to_csv({"start", "end", "start_label", "end_label", "kind", "value",
                       "shift_p_value", "ci_low", "ci_high"},
                      rows);
}

json with_labels(json result, const TimeSeries& s) {
    for (auto& c : result["change_points"]) c["label"] = io::round9(s.label_at(c["index"]));
    return result;
}

// Optional AR(1) removal ahead of step one.
TimeSeries maybe_prewhiten(const TimeSeries& s, const DetectionParams& p,
                           std::optional<Ar1Estimate>& ar1) {
    if (p.prewhiten == Prewhitening::none) return s;
    const auto method = p.prewhiten == Prewhitening::mpk ? Ar1Method::mpk : Ar1Method::ip4;
    ar1 = estimate_ar1(s, static_cast<std::size_t>(p.m), method);
    return prewhiten(s, ar1->alpha);
}

void detect_mean_cmd(const Options& o) {
    const auto params = detection(o);
    const auto input = read_input(o, 1).front();
    std::optional<Ar1Estimate> ar1;
    const auto series = maybe_prewhiten(input, params, ar1);
    const auto r = detect_mean(series, params);
    if (o.format == "csv") return write_output(o, regimes_csv(r.regimes, series, ar1 ? 1 : 0));
    json result = with_labels(io::to_json(r), series);
    result["ar1"] = ar1 ? io::to_json(*ar1) : json(nullptr);
    result["index_offset"] = ar1 ? 1 : 0;
    write_output(o, io::dump(io::result_document("detect-mean", io::to_json(params), result)));
}

void detect_variance_cmd(const Options& o) {
    const auto params = detection(o);
    const auto input = read_input(o, 1).front();
    std::optional<Ar1Estimate> ar1;
    auto series = maybe_prewhiten(input, params, ar1);
    if (o.remove_mean) series = detect_mean(series, params).residuals;
    const auto r = detect_variance(series, params);
    if (o.format == "csv") return write_output(o, regimes_csv(r.regimes, series, ar1 ? 1 : 0));
    json result = with_labels(io::to_json(r), series);
    result["ar1"] = ar1 ? io::to_json(*ar1) : json(nullptr);
    result["index_offset"] = ar1 ? 1 : 0;
    result["mean_removed"] = o.remove_mean;
    write_output(o, io::dump(io::result_document("detect-variance", io::to_json(params), result)));
}

SkipSteps parse_skip(const std::vector<std::string>& names) {
    SkipSteps s;
    for (const auto& n : names) {
        if (n == "mean") {
            s.mean = true;
        } else if (n == "variance") {
            s.variance = true;
        } else {
            throw ParamError("skip", "unknown step '" + n + "' (expected mean or variance)");
        }
    }
    return s;
}

void detect_correlation_cmd(const Options& o) {
    const auto sp = srsd_params(o);
    const auto skip = parse_skip(o.skip);
    const auto in = read_input(o, 2);
    const auto r = step_skipping_mode(in[0], in[1], sp, skip);
    const auto& x = r.x.normalized;
    if (o.format == "csv") {
        return write_output(o, regimes_csv(r.correlation.regimes, x, r.index_offset));
    }
    json result = io::to_json(r);
    result["correlation"] = with_labels(result["correlation"], x);
    json params = srsd_params_json(sp);
    params["skip"] = {{"mean", skip.mean}, {"variance", skip.variance}};
    write_output(o, io::dump(io::result_document("detect-correlation", params, result)));
}

void generate_cmd(const Options& o) {
    std::uint64_t seed = o.seed;
    if (const char* env = std::getenv("SRSD_SEED"); env && *env) {
        char* end = nullptr;
        seed = std::strtoull(env, &end, 10);
        if (*end) throw UsageError("SRSD_SEED must be an unsigned integer");
    }
    const auto [x, y] = synth::generate_pair(synth::synthetic_experiment_spec(seed));
    if (o.format == "json") {
        json result = {{"seed", seed}, {"x", io::to_json(x)}, {"y", io::to_json(y)}};
        return write_output(o, io::dump(io::result_document("generate", {{"seed", seed}}, result)));
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < x.size(); ++i) {
        rows.push_back({std::to_string(i + 1), io::format_number(x[i]), io::format_number(y[i])});
    }
    write_output(o, io::to_csv({"index", "x", "y"}, rows));
}

std::string traces_csv(const SrsdResult& r) {
    const std::size_t n = r.x.normalized.size();
    auto col = [](const std::optional<std::vector<double>>& v, std::size_t i) {
        return v ? io::format_number((*v)[i]) : std::string();
    };
    auto rsi = [](const std::optional<MeanShiftResult>& m) {
        return m ? std::optional(m->rsi) : std::nullopt;
    };
    auto rssi = [](const std::optional<VarianceShiftResult>& v) {
        return v ? std::optional(v->rssi) : std::nullopt;
    };
    const auto xr = rsi(r.x.mean), yr = rsi(r.y.mean);
    const auto xv = rssi(r.x.variance), yv = rssi(r.y.variance);
    const auto sr = rssi(r.correlation.sum_channel), dr = rssi(r.correlation.diff_channel);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < n; ++i) {
        rows.push_back({std::to_string(i + 1 + r.index_offset),
                        io::format_number(r.x.normalized.label_at(i + 1)), col(xr, i), col(yr, i),
                        col(xv, i), col(yv, i), col(sr, i), col(dr, i)});
    }
    return io::to_csv({"index", "label", "x_rsi", "y_rsi", "x_rssi", "y_rssi", "sum_rssi",
                       "diff_rssi"},
                      rows);
}

void diagnose_cmd(const Options& o) {
    const auto sp = srsd_params(o);
    const auto in = read_input(o, 2);
    const auto r = run_srsd(in[0], in[1], sp);
    const auto raw = running_correlation(in[0], in[1], o.window);
    const auto adj = running_correlation(r.x.normalized, r.y.normalized, o.window);
    // Raw windows are aligned to the adjusted ones when prewhitening drops a point.
    const std::size_t shift = r.index_offset;
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < adj.size(); ++k) {
        const std::size_t start = k + 1 + shift;
        rows.push_back({std::to_string(start), std::to_string(start + o.window - 1),
                        io::format_number(raw[k + shift]), io::format_number(adj[k])});
    }
    if (!o.traces.empty()) {
        std::ofstream t(o.traces, std::ios::binary);
        if (!t) throw DataError("cannot write '" + o.traces + "'");
        t << traces_csv(r);
    }
    if (o.format == "json") {
        json result = {{"window", o.window},
                       {"raw_r", json::array()},
                       {"adjusted_r", json::array()},
                       {"window_start", json::array()}};
        for (const auto& row : rows) {
            result["window_start"].push_back(std::stoul(row[0]));
            result["raw_r"].push_back(io::round9(std::stod(row[2])));
            result["adjusted_r"].push_back(io::round9(std::stod(row[3])));
        }
        json params = srsd_params_json(sp);
        params["window"] = o.window;
        return write_output(o, io::dump(io::result_document("diagnose", params, result)));
    }
    write_output(o, io::to_csv({"window_start", "window_end", "raw_r", "adjusted_r"}, rows));
}

void add_series_options(CLI::App* cmd, Options& o, bool pair) {
    cmd->add_option("-i,--input", o.input, "input CSV (header row required)")->required();
    cmd->add_option("--columns", o.columns, pair ? "two value columns by header name"
                                                  : "value column by header name")
        ->delimiter(',');
    cmd->add_option("--labels", o.labels, "label column (default: first column)");
}

void add_detection_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--p", o.p, "target significance level")->capture_default_str();
    cmd->add_option("--l", o.l, "cut-off length")->capture_default_str();
    cmd->add_option("--prewhiten", o.prewhiten, "none, mpk or ip4")->capture_default_str();
    cmd->add_option("--m", o.m, "AR(1) subsample size")->capture_default_str();
}

void add_correlation_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--p-corr", o.p_corr, "significance level for the correlation step");
    cmd->add_option("--l-corr", o.l_corr, "cut-off length for the correlation step");
    cmd->add_option("--confidence", o.confidence, "confidence level of regime intervals")
        ->capture_default_str();
}

void add_output_options(CLI::App* cmd, Options& o, const std::string& default_format) {
    o.format = default_format;
    cmd->add_option("-o,--output", o.output, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential regime shift detection in mean, variance and correlation"};
    app.set_version_flag("--version", std::string(io::tool_version));
    app.require_subcommand(1);

    std::map<std::string, Options> opts;

    auto* mean = app.add_subcommand("detect-mean", "regime shifts in the mean of one series");
    add_series_options(mean, opts["detect-mean"], false);
    add_detection_options(mean, opts["detect-mean"]);
    add_output_options(mean, opts["detect-mean"], "json");

    auto* var = app.add_subcommand("detect-variance", "regime shifts in the variance of residuals");
    add_series_options(var, opts["detect-variance"], false);
    add_detection_options(var, opts["detect-variance"]);
    add_output_options(var, opts["detect-variance"], "json");
    var->add_flag("--remove-mean", opts["detect-variance"].remove_mean,
                  "remove mean shifts before the variance test");

    auto* corr = app.add_subcommand("detect-correlation", "three-step correlation shift detection");
    add_series_options(corr, opts["detect-correlation"], true);
    add_detection_options(corr, opts["detect-correlation"]);
    add_correlation_options(corr, opts["detect-correlation"]);
    add_output_options(corr, opts["detect-correlation"], "json");
    corr->add_option("--skip", opts["detect-correlation"].skip,
                     "steps to skip: mean, variance (diagnostic)")
        ->delimiter(',');

    auto* gen = app.add_subcommand("generate", "synthetic pair of the reference experiment");
    gen->add_option("--seed", opts["generate"].seed, "random seed (SRSD_SEED overrides)")
        ->capture_default_str();
    add_output_options(gen, opts["generate"], "csv");

    auto* diag = app.add_subcommand("diagnose", "running correlations and index traces");
    add_series_options(diag, opts["diagnose"], true);
    add_detection_options(diag, opts["diagnose"]);
    add_correlation_options(diag, opts["diagnose"]);
    add_output_options(diag, opts["diagnose"], "csv");
    diag->add_option("--window", opts["diagnose"].window, "running correlation window")
        ->check(CLI::Range(3, 100000))
        ->capture_default_str();
    diag->add_option("--traces", opts["diagnose"].traces, "write RSI/RSSI traces CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*mean) detect_mean_cmd(opts["detect-mean"]);
        if (*var) detect_variance_cmd(opts["detect-variance"]);
        if (*corr) detect_correlation_cmd(opts["detect-correlation"]);
        if (*gen) generate_cmd(opts["generate"]);
        if (*diag) diagnose_cmd(opts["diagnose"]);
    } catch (const UsageError& e) {
        std::cerr << "srsd: " << e.what() << "\n";
        return 1;
    } catch (const ParamError& e) {
        std::cerr << "srsd: invalid --" << e.field() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "srsd: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
