#include "probmatrix/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "probmatrix/error.hpp"

namespace probmatrix {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            return out;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
}

char detect_delimiter(std::string_view header) {
    if (header.find('\t') != std::string_view::npos) return '\t';
    if (header.find(';') != std::string_view::npos) return ';';
    return ',';
}

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<long long> parse_int(std::string_view s) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

template <typename T>
nlohmann::json optional_number(const std::optional<T>& v) {
    return v ? number_or_null(static_cast<double>(*v)) : nlohmann::json();
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Prediction logs
// ---------------------------------------------------------------------------

ColumnMap parse_column_map(const std::string& spec) {
    ColumnMap m;
    if (trim(spec).empty()) return m;
    for (auto item : split(spec, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw UsageError("column mapping entry '" + std::string(item) + "' lacks '='");
        const auto key = trim(item.substr(0, eq));
        const std::string value(trim(item.substr(eq + 1)));
        if (value.empty()) throw UsageError("column mapping for '" + std::string(key) + "' is empty");
        if (key == "dataset") m.dataset = value;
        else if (key == "fold") m.fold = value;
        else if (key == "model") m.model = value;
        else if (key == "y") m.y = value;
        else if (key == "p") m.p = value;
        else throw UsageError("unknown column '" + std::string(key) + "' in column mapping");
    }
    return m;
}

PredictionLog parse_predictions(std::istream& in, const ParseOptions& options) {
    std::string line;
    std::size_t line_no = 0;
    // Header: first non-empty line.
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) break;
    }
    if (trim(line).empty()) throw ParseError(line_no == 0 ? 1 : line_no, "missing header row");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    const char delim = options.delimiter ? options.delimiter : detect_delimiter(line);
    const auto header = split(line, delim);
    const auto column_of = [&](const std::string& name) -> std::size_t {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ParseError(line_no, "missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const auto& cm = options.columns;
    const std::size_t c_ds = column_of(cm.dataset);
    const std::size_t c_fold = column_of(cm.fold);
    const std::size_t c_model = column_of(cm.model);
    const std::size_t c_y = column_of(cm.y);
    const std::size_t c_p = column_of(cm.p);
    const std::size_t needed = std::max({c_ds, c_fold, c_model, c_y, c_p}) + 1;

    std::map<SeriesKey, std::pair<std::vector<std::uint8_t>, std::vector<double>>> acc;
    PredictionLog log;
    const auto reject = [&](std::size_t at, const std::string& why) {
        if (options.strict) throw ParseError(at, why);
        ++log.skipped_rows;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line, delim);
        if (fields.size() < needed) {
            reject(line_no, "expected at least " + std::to_string(needed) + " fields, got " +
                                std::to_string(fields.size()));
            continue;
        }
        if (fields[c_ds].empty() || fields[c_model].empty()) {
            reject(line_no, "empty dataset or model id");
            continue;
        }
        const auto fold = parse_int(fields[c_fold]);
        if (!fold || *fold < 0 || *fold > 1'000'000'000) {
            reject(line_no, "fold '" + std::string(fields[c_fold]) + "' is not a non-negative integer");
            continue;
        }
        const auto y = parse_int(fields[c_y]);
        if (!y || (*y != 0 && *y != 1)) {
            reject(line_no, "y '" + std::string(fields[c_y]) + "' is not 0 or 1");
            continue;
        }
        const auto p = parse_double(fields[c_p]);
        if (!p) {
            reject(line_no, "p '" + std::string(fields[c_p]) + "' is not numeric");
            continue;
        }
        if (!std::isfinite(*p) || *p < 0.0 || *p > 1.0) {
            reject(line_no, "p '" + std::string(fields[c_p]) + "' outside [0, 1]");
            continue;
        }
        auto& [ys, ps] = acc[SeriesKey{std::string(fields[c_ds]), static_cast<int>(*fold), std::string(fields[c_model])}];
        ys.push_back(static_cast<std::uint8_t>(*y));
        ps.push_back(*p);
    }

    for (auto& [key, v] : acc) {
        if (v.first.size() < 2) {
            const std::string what = "group (" + key.dataset + ", " + std::to_string(key.fold) + ", " + key.model +
                                     ") has fewer than 2 records";
            if (options.strict) throw InvalidInput(what);
            log.warnings.push_back(what + "; dropped");
            log.skipped_rows += v.first.size();
            continue;
        }
        log.rows += v.first.size();
        log.groups.emplace(key, FoldSeries(std::move(v.first), std::move(v.second)));
    }
    if (log.skipped_rows > 0) log.warnings.push_back(std::to_string(log.skipped_rows) + " invalid row(s) skipped");
    return log;
}

PredictionLog read_predictions_file(const std::string& path, const ParseOptions& options) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    return parse_predictions(in, options);
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw InvalidInput("cannot format number");
    return std::string(buf, ptr);
}

void write_predictions(std::ostream& out, const PredictionLog& log) {
    out << "dataset,fold,model,y,p\n";
    for (const auto& [key, series] : log.groups) {
        const auto y = series.labels();
        const auto p = series.probs();
        for (std::size_t i = 0; i < series.size(); ++i) {
            out << key.dataset << ',' << key.fold << ',' << key.model << ',' << static_cast<int>(y[i]) << ','
                << format_double(p[i]) << '\n';
        }
    }
}

void write_records(std::ostream& out, const std::vector<PredictionRecord>& records) {
    out << "dataset,fold,model,y,p\n";
    for (const auto& r : records) {
        out << r.dataset << ',' << r.fold << ',' << r.model << ',' << r.y << ',' << format_double(r.p) << '\n';
    }
}

std::vector<RankFixtureRow> parse_rank_table(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty() && trim(line).front() != '#') break;
    }
    const auto header = split(line, ',');
    const auto find = [&](std::string_view name) -> std::optional<std::size_t> {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) return std::nullopt;
        return static_cast<std::size_t>(it - header.begin());
    };
    const auto c_model = find("model");
    const auto c_auc = find("auc_rank");
    const auto c_z = find("z_rank");
    const auto c_mz = find("mean_abs_z");
    if (!c_model || !c_auc || !c_z) throw ParseError(line_no, "rank table needs columns model, auc_rank, z_rank");

    std::vector<RankFixtureRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty() || trim(line).front() == '#') continue;
        const auto f = split(line, ',');
        if (f.size() < header.size()) throw ParseError(line_no, "short row");
        RankFixtureRow r;
        r.model = std::string(f[*c_model]);
        const auto a = parse_double(f[*c_auc]);
        const auto z = parse_double(f[*c_z]);
        if (!a || !z) throw ParseError(line_no, "rank is not numeric");
        r.auc_rank = *a;
        r.z_rank = *z;
        if (c_mz && !f[*c_mz].empty()) {
            const auto m = parse_double(f[*c_mz]);
            if (!m) throw ParseError(line_no, "mean_abs_z is not numeric");
            r.mean_abs_z = *m;
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

nlohmann::json to_json(const QuadrantReport& report) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : report.entries) {
        entries.push_back({{"model", e.model},
                           {"discrimination_rank", number_or_null(e.discrimination_rank)},
                           {"z_rank", optional_number(e.z_rank)},
                           {"mean_abs_z", optional_number(e.mean_abs_z)},
                           {"quadrant", std::string(to_string(e.quadrant))},
                           {"type", std::string(type_label(e.quadrant))},
                           {"prescription", std::string(to_string(e.prescription))}});
    }
    return {{"rule", std::string(to_string(report.rule))},
            {"discrimination_axis", std::string(to_string(report.discrimination_axis))},
            {"thresholds",
             {{"discrimination_rank", number_or_null(report.discrimination_threshold)},
              {report.rule == QuadrantRule::median_split ? "z_rank" : "mean_abs_z",
               number_or_null(report.calibration_threshold)}}},
            {"entries", entries}};
}

nlohmann::json to_json(const RankSummary& summary) {
    nlohmann::json models = nlohmann::json::object();
    for (const auto& [model, e] : summary.models) {
        models[model] = {{"expected_rank", number_or_null(e.expected_rank)},
                         {"cells_used", e.cells_used},
                         {"cells_excluded", e.cells_excluded}};
    }
    return {{"metric", std::string(to_string(summary.metric))},
            {"direction", summary.direction == Direction::lower_better ? "lower-better" : "higher-better"},
            {"models", models},
            {"warnings", summary.warnings}};
}

nlohmann::json to_json(const WilcoxonResult& r) {
    return {{"w_statistic", number_or_null(r.w_statistic)},
            {"n_effective", r.n_effective},
            {"p_value", number_or_null(r.p_value)},
            {"method", std::string(to_string(r.method))},
            {"tie_count", r.tie_count}};
}

nlohmann::json to_json(const HeadToHead& r) {
    return {{"metric", std::string(to_string(r.metric))},
            {"wins", r.wins},
            {"ties", r.ties},
            {"datasets", r.datasets}};
}

nlohmann::json to_json(const EffectSummary& s) {
    nlohmann::json metrics = nlohmann::json::object();
    for (const auto& [metric, e] : s.metrics) {
        metrics[std::string(to_string(metric))] = {{"mean_pct_delta", number_or_null(e.mean_pct_delta)},
                                                   {"improved_fraction", number_or_null(e.improved_fraction)},
                                                   {"cells", e.cells},
                                                   {"excluded_zero_base", e.excluded_zero_base}};
    }
    return {{"model", s.model}, {"metrics", metrics}};
}

nlohmann::json to_json(const MiscalibrationSummary& s) {
    return {{"mean_abs_z", number_or_null(s.mean_abs_z)},
            {"median_abs_z", number_or_null(s.median_abs_z)},
            {"pct_significant", number_or_null(s.pct_significant)},
            {"cells", s.cells}};
}

nlohmann::json to_json(const DecompositionResult& r) {
    return {{"reliability", number_or_null(r.reliability)},
            {"resolution", number_or_null(r.resolution)},
            {"uncertainty", number_or_null(r.uncertainty)},
            {"residual", number_or_null(r.residual)},
            {"brier", number_or_null(r.brier)},
            {"bin_count", r.bin_count},
            {"scheme", std::string(to_string(r.scheme))}};
}

nlohmann::json to_json(const StabilityReport& report) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : report.entries) {
        nlohmann::json freq = nlohmann::json::object();
        for (auto q : {Quadrant::eagle, Quadrant::bull, Quadrant::sloth, Quadrant::mole}) {
            freq[std::string(to_string(q))] = number_or_null(e.fraction(q));
        }
        entries.push_back({{"model", e.model},
                           {"datasets", e.datasets},
                           {"frequency", freq},
                           {"modal_quadrant", std::string(to_string(e.modal))},
                           {"modal_rate", number_or_null(e.modal_rate)}});
    }
    return {{"datasets", report.datasets},
            {"modal_agreement", number_or_null(report.modal_agreement())},
            {"entries", entries}};
}

nlohmann::json emit_report(const ReportInput& input) {
    nlohmann::json models = nlohmann::json::array();
    nlohmann::json thresholds = nlohmann::json::object();
    if (input.quadrants) {
        const auto& q = *input.quadrants;
        thresholds = to_json(q)["thresholds"];
        thresholds["rule"] = std::string(to_string(q.rule));
        thresholds["discrimination_axis"] = std::string(to_string(q.discrimination_axis));
        for (const auto& e : q.entries) {
            nlohmann::json m = {{"model", e.model},
                                {"auc_rank", number_or_null(e.discrimination_rank)},
                                {"z_rank", optional_number(e.z_rank)},
                                {"quadrant", std::string(to_string(e.quadrant))},
                                {"type", std::string(type_label(e.quadrant))},
                                {"prescription", std::string(to_string(e.prescription))}};
            std::optional<double> maz = e.mean_abs_z;
            if (!maz) {
                if (const auto it = input.mean_abs_z.find(e.model); it != input.mean_abs_z.end()) maz = it->second;
            }
            m["mean_abs_z"] = optional_number(maz);
            nlohmann::json ci = nlohmann::json::object();
            if (const auto it = input.discrimination_ci.find(e.model); it != input.discrimination_ci.end()) {
                ci["auc_rank"] = {number_or_null(it->second.low), number_or_null(it->second.high)};
            }
            if (const auto it = input.z_ci.find(e.model); it != input.z_ci.end()) {
                ci["z_rank"] = {number_or_null(it->second.low), number_or_null(it->second.high)};
            }
            m["ci"] = ci;
            models.push_back(std::move(m));
        }
    }
    return {{"schema", kReportSchema},
            {"tool_version", kToolVersion},
            {"command", input.command},
            {"config", input.config},
            {"thresholds", thresholds},
            {"models", models},
            {"stats", input.stats},
            {"warnings", input.warnings}};
}

std::string dump_report(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Figure
// ---------------------------------------------------------------------------

std::string render_matrix_svg(const QuadrantReport& report) {
    if (report.entries.empty()) throw InvalidInput("matrix figure needs at least one model");
    const bool absolute = report.rule == QuadrantRule::absolute_z;

    constexpr double width = 820, height = 660;
    constexpr double left = 90, right = 30, top = 50, bottom = 80;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    const auto x_of_entry = [&](const QuadrantEntry& e) {
        if (absolute) return e.mean_abs_z.value_or(0.0);
        return e.z_rank.value_or(0.0);
    };
    double x_lo = report.calibration_threshold, x_hi = report.calibration_threshold;
    double y_lo = report.discrimination_threshold, y_hi = report.discrimination_threshold;
    for (const auto& e : report.entries) {
        x_lo = std::min(x_lo, x_of_entry(e));
        x_hi = std::max(x_hi, x_of_entry(e));
        y_lo = std::min(y_lo, e.discrimination_rank);
        y_hi = std::max(y_hi, e.discrimination_rank);
    }
    const auto pad = [](double& lo, double& hi) {
        const double span = hi - lo;
        const double margin = span > 0 ? 0.08 * span : 1.0;
        lo -= margin;
        hi += margin;
    };
    pad(x_lo, x_hi);
    pad(y_lo, y_hi);
    const auto sx = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    // Better (lower) ranks at the top.
    const auto sy = [&](double y) { return top + (y - y_lo) / (y_hi - y_lo) * plot_h; };

    const double tx = sx(report.calibration_threshold);
    const double ty = sy(report.discrimination_threshold);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
        << "<!DOCTYPE svg PUBLIC \"-//W3C//DTD SVG 1.1//EN\" "
           "\"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd\">\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt2(width) << "\" height=\""
        << fmt2(height) << "\" viewBox=\"0 0 " << fmt2(width) << ' ' << fmt2(height) << "\">\n"
        << "<title>Probability matrix</title>\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << fmt2(width) << "\" height=\"" << fmt2(height)
        << "\" fill=\"#ffffff\"/>\n";

    struct Tint {
        const char* cls;
        double x, y, w, h;
        const char* fill;
        const char* label;
    };
    const Tint tints[] = {
        {"tint eagle", left, top, tx - left, ty - top, "#2e7d32", "EAGLE: ship it"},
        {"tint bull", tx, top, left + plot_w - tx, ty - top, "#ef8f00", "BULL: apply Venn-Abers"},
        {"tint sloth", left, ty, tx - left, top + plot_h - ty, "#757575", "SLOTH: retrain"},
        {"tint mole", tx, ty, left + plot_w - tx, top + plot_h - ty, "#c62828", "MOLE: start over"},
    };
    for (const auto& t : tints) {
        svg << "<rect class=\"" << t.cls << "\" x=\"" << fmt2(t.x) << "\" y=\"" << fmt2(t.y) << "\" width=\""
            << fmt2(std::max(0.0, t.w)) << "\" height=\"" << fmt2(std::max(0.0, t.h)) << "\" fill=\"" << t.fill
            << "\" fill-opacity=\"0.10\"/>\n";
        svg << "<text x=\"" << fmt2(t.x + 8) << "\" y=\"" << fmt2(t.y + 18)
            << "\" font-family=\"sans-serif\" font-size=\"13\" font-weight=\"bold\" fill=\"" << t.fill << "\">"
            << t.label << "</text>\n";
    }

    svg << "<rect x=\"" << fmt2(left) << "\" y=\"" << fmt2(top) << "\" width=\"" << fmt2(plot_w) << "\" height=\""
        << fmt2(plot_h) << "\" fill=\"none\" stroke=\"#000000\"/>\n";
    svg << "<line class=\"threshold\" x1=\"" << fmt2(tx) << "\" y1=\"" << fmt2(top) << "\" x2=\"" << fmt2(tx)
        << "\" y2=\"" << fmt2(top + plot_h) << "\" stroke=\"#333333\" stroke-dasharray=\"6,4\"/>\n";
    svg << "<line class=\"threshold\" x1=\"" << fmt2(left) << "\" y1=\"" << fmt2(ty) << "\" x2=\""
        << fmt2(left + plot_w) << "\" y2=\"" << fmt2(ty) << "\" stroke=\"#333333\" stroke-dasharray=\"6,4\"/>\n";

    const std::string x_title = absolute ? "CALIBRATION (mean |Z|)" : "CALIBRATION (|Z| expected rank)";
    const std::string y_title = report.discrimination_axis == Metric::resolution
                                    ? "DISCRIMINATION (Brier resolution expected rank)"
                                    : "DISCRIMINATION (AUC-ROC expected rank)";
    svg << "<text x=\"" << fmt2(left + plot_w / 2) << "\" y=\"" << fmt2(height - 30)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << xml_escape(x_title)
        << " (threshold " << fmt2(report.calibration_threshold) << ")</text>\n";
    svg << "<text x=\"25\" y=\"" << fmt2(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 25 "
        << fmt2(top + plot_h / 2) << ")\" font-family=\"sans-serif\" font-size=\"14\">" << xml_escape(y_title)
        << " (threshold " << fmt2(report.discrimination_threshold) << ")</text>\n";

    // Axis ticks at the ends of each range.
    for (double v : {x_lo, report.calibration_threshold, x_hi}) {
        svg << "<text x=\"" << fmt2(sx(v)) << "\" y=\"" << fmt2(top + plot_h + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt2(v) << "</text>\n";
    }
    for (double v : {y_lo, report.discrimination_threshold, y_hi}) {
        svg << "<text x=\"" << fmt2(left - 6) << "\" y=\"" << fmt2(sy(v) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt2(v) << "</text>\n";
    }

    constexpr double r = 7.0;
    for (const auto& e : report.entries) {
        const double cx = sx(x_of_entry(e));
        const double cy = sy(e.discrimination_rank);
        const std::string cls = "marker " + std::string(to_string(e.quadrant));
        switch (e.quadrant) {
            case Quadrant::eagle:
                svg << "<polygon class=\"" << cls << "\" points=\"" << fmt2(cx) << ',' << fmt2(cy - r) << ' '
                    << fmt2(cx - r) << ',' << fmt2(cy + r) << ' ' << fmt2(cx + r) << ',' << fmt2(cy + r)
                    << "\" fill=\"#2e7d32\"/>\n";
                break;
            case Quadrant::bull:
                svg << "<rect class=\"" << cls << "\" x=\"" << fmt2(cx - r) << "\" y=\"" << fmt2(cy - r)
                    << "\" width=\"" << fmt2(2 * r) << "\" height=\"" << fmt2(2 * r) << "\" fill=\"#ef8f00\"/>\n";
                break;
            case Quadrant::sloth:
                svg << "<circle class=\"" << cls << "\" cx=\"" << fmt2(cx) << "\" cy=\"" << fmt2(cy) << "\" r=\""
                    << fmt2(r) << "\" fill=\"#757575\"/>\n";
                break;
            case Quadrant::mole:
                svg << "<polygon class=\"" << cls << "\" points=\"" << fmt2(cx) << ',' << fmt2(cy - r) << ' '
                    << fmt2(cx + r) << ',' << fmt2(cy) << ' ' << fmt2(cx) << ',' << fmt2(cy + r) << ' '
                    << fmt2(cx - r) << ',' << fmt2(cy) << "\" fill=\"#c62828\"/>\n";
                break;
        }
        svg << "<text class=\"label\" x=\"" << fmt2(cx + r + 3) << "\" y=\"" << fmt2(cy + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(e.model) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << content;
    if (!out) throw InvalidInput("write to '" + path + "' failed");
}

}  // namespace probmatrix
