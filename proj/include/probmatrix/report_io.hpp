#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "probmatrix/calibrators.hpp"
#include "probmatrix/matrix.hpp"
#include "probmatrix/predictions.hpp"
#include "probmatrix/stats.hpp"

namespace probmatrix {

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr const char* kReportSchema = "probmatrix.report/1";

// ---------------------------------------------------------------------------
// Prediction logs
// ---------------------------------------------------------------------------

/// Header names to look for, per logical column.
struct ColumnMap {
    std::string dataset = "dataset";
    std::string fold = "fold";
    std::string model = "model";
    std::string y = "y";
    std::string p = "p";
};

/// Parses "dataset=ds,fold=k,..." overrides into a ColumnMap.
ColumnMap parse_column_map(const std::string& spec);

struct ParseOptions {
    char delimiter = '\0';  // '\0' = detect from the header (tab, ';' or ',')
    bool strict = true;
    ColumnMap columns;
};

/// Reads a delimiter-separated prediction log with a header row. In strict
/// mode the first invalid row raises ParseError; in lenient mode invalid
/// rows are skipped and counted, and groups left with fewer than 2 records
/// are dropped with a warning.
PredictionLog parse_predictions(std::istream& in, const ParseOptions& options = {});
PredictionLog read_predictions_file(const std::string& path, const ParseOptions& options = {});

/// Comma-separated, header "dataset,fold,model,y,p", probabilities in
/// shortest round-trip form. Rows are emitted in group order.
void write_predictions(std::ostream& out, const PredictionLog& log);
void write_records(std::ostream& out, const std::vector<PredictionRecord>& records);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct ReportInput {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::optional<QuadrantReport> quadrants;
    std::map<std::string, Interval> discrimination_ci;
    std::map<std::string, Interval> z_ci;
    std::map<std::string, double> mean_abs_z;
    nlohmann::json stats = nlohmann::json::object();
    std::vector<std::string> warnings;
};

/// Stable-schema report document. nlohmann::json objects keep keys sorted,
/// and doubles are written in shortest round-trip form, so identical inputs
/// give byte-identical output from dump_report.
nlohmann::json emit_report(const ReportInput& input);
std::string dump_report(const nlohmann::json& doc);

nlohmann::json to_json(const QuadrantReport& report);
nlohmann::json to_json(const RankSummary& summary);
nlohmann::json to_json(const WilcoxonResult& result);
nlohmann::json to_json(const HeadToHead& result);
nlohmann::json to_json(const EffectSummary& summary);
nlohmann::json to_json(const MiscalibrationSummary& summary);
nlohmann::json to_json(const DecompositionResult& result);
nlohmann::json to_json(const StabilityReport& report);

/// Reads a per-model expected-rank table (columns model, auc_rank, z_rank,
/// and optionally mean_abs_z), comma separated with a header.
struct RankFixtureRow {
    std::string model;
    double auc_rank = 0.0;
    double z_rank = 0.0;
    std::optional<double> mean_abs_z;
};
std::vector<RankFixtureRow> parse_rank_table(std::istream& in);

// ---------------------------------------------------------------------------
// Figure
// ---------------------------------------------------------------------------

/// Standalone SVG 1.1 scatter: x = |z| rank (mean |z| under the absolute
/// rule), y = discrimination rank with better ranks at the top, dashed
/// threshold lines, tinted quadrants, one marker shape per quadrant
/// (triangle, square, circle, diamond) and a label per model.
std::string render_matrix_svg(const QuadrantReport& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace probmatrix
