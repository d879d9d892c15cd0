#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "probmatrix/metrics.hpp"
#include "probmatrix/predictions.hpp"

namespace probmatrix {

// ---------------------------------------------------------------------------
// Metric table
// ---------------------------------------------------------------------------

enum class Metric { logloss, brier, auc, abs_z, resolution };
enum class Direction { lower_better, higher_better };

std::string_view to_string(Metric metric);
Metric metric_from_string(std::string_view name);
Direction default_direction(Metric metric);

/// Metrics for one (dataset, fold, model) cell. AUC is missing on
/// single-class folds, z on degenerate-variance folds.
struct CellMetrics {
    double logloss = 0.0;
    double brier = 0.0;
    std::optional<double> auc;
    std::optional<double> z;
    double resolution = 0.0;

    /// |z| for abs_z; nullopt when the metric is missing.
    std::optional<double> get(Metric metric) const;
};

struct CellKey {
    std::string dataset;
    int fold = 0;

    auto operator<=>(const CellKey&) const = default;
};

class MetricTable {
public:
    void add(const std::string& model, const CellKey& cell, const CellMetrics& metrics);

    const CellMetrics* find(const std::string& model, const CellKey& cell) const;

    /// model -> cell -> metrics
    const std::map<std::string, std::map<CellKey, CellMetrics>>& by_model() const noexcept { return cells_; }

    std::vector<std::string> models() const;
    std::vector<CellKey> cells() const;
    std::vector<std::string> datasets() const;
    bool empty() const noexcept { return cells_.empty(); }

private:
    std::map<std::string, std::map<CellKey, CellMetrics>> cells_;
};

struct MetricOptions {
    double clip_eps = kDefaultClipEps;
    // Resolution for the alternate discrimination axis. Unique-value
    // grouping makes resolution equal to the uncertainty term for any
    // continuous score, so a binned scheme is used here.
    BinScheme resolution_scheme = BinScheme::equal_width;
    std::size_t resolution_bins = 10;
};

CellMetrics compute_cell_metrics(const FoldSeries& series, const MetricOptions& options = {});

/// Computes every cell. All models within one (dataset, fold) must carry the
/// same label vector; a mismatch raises InvalidInput.
MetricTable compute_metric_table(const PredictionLog& log, const MetricOptions& options = {});

// ---------------------------------------------------------------------------
// Expected ranks
// ---------------------------------------------------------------------------

struct RankEntry {
    double expected_rank = 0.0;
    std::size_t cells_used = 0;
    std::size_t cells_excluded = 0;
    std::vector<double> cell_ranks;  // in cell order, excluded cells omitted
};

struct RankSummary {
    Metric metric = Metric::auc;
    Direction direction = Direction::higher_better;
    std::map<std::string, RankEntry> models;
    std::vector<std::string> warnings;

    std::map<std::string, double> expected() const;
};

/// Fractional ranks of `values`, 1 = best, ties share the average rank.
std::vector<double> fractional_ranks(const std::vector<double>& values, Direction direction);

RankSummary expected_ranks(const MetricTable& table, Metric metric, Direction direction);
inline RankSummary expected_ranks(const MetricTable& table, Metric metric) {
    return expected_ranks(table, metric, default_direction(metric));
}

// ---------------------------------------------------------------------------
// Quadrants
// ---------------------------------------------------------------------------

enum class Quadrant { eagle, bull, sloth, mole };
enum class Prescription { ship_it, apply_venn_abers, retrain, start_over };
enum class QuadrantRule { median_split, absolute_z };

std::string_view to_string(Quadrant q);
std::string_view type_label(Quadrant q);  // "Type I" ... "Type IV"
std::string_view to_string(Prescription p);
std::string_view to_string(QuadrantRule rule);
Quadrant quadrant_from_string(std::string_view name);
Prescription prescription_for(Quadrant q);
Quadrant quadrant_for(bool well_calibrated, bool strong_discriminator);

struct QuadrantEntry {
    std::string model;
    double discrimination_rank = 0.0;
    std::optional<double> z_rank;
    std::optional<double> mean_abs_z;
    Quadrant quadrant = Quadrant::mole;
    Prescription prescription = Prescription::start_over;
};

struct QuadrantReport {
    QuadrantRule rule = QuadrantRule::median_split;
    Metric discrimination_axis = Metric::auc;
    double discrimination_threshold = 0.0;  // rank
    double calibration_threshold = 0.0;     // rank (median) or mean |z| (absolute)
    std::vector<QuadrantEntry> entries;     // sorted by model id

    const QuadrantEntry* find(std::string_view model) const;
};

/// Mean of the two middle values for even counts.
double median(std::vector<double> values);

/// Median split on both axes; rank <= threshold is the good side.
QuadrantReport assign_quadrants_median(const std::map<std::string, double>& discrimination_ranks,
                                       const std::map<std::string, double>& z_ranks);
QuadrantReport assign_quadrants_median(const RankSummary& discrimination, const RankSummary& z);

/// Calibration axis by mean |z| <= z_threshold; discrimination keeps the
/// median rank split.
QuadrantReport assign_quadrants_absolute(const std::map<std::string, double>& discrimination_ranks,
                                         const std::map<std::string, double>& mean_abs_z,
                                         double z_threshold = kZCritical);
QuadrantReport assign_quadrants_absolute(const RankSummary& discrimination,
                                         const std::map<std::string, double>& mean_abs_z,
                                         double z_threshold = kZCritical);

/// Mean |z| per model over the cells where z is defined.
std::map<std::string, double> mean_abs_z(const MetricTable& table);

// ---------------------------------------------------------------------------
// Per-dataset stability
// ---------------------------------------------------------------------------

struct StabilityEntry {
    std::string model;
    std::array<std::size_t, 4> counts{};  // indexed by Quadrant
    std::size_t datasets = 0;
    Quadrant modal = Quadrant::eagle;
    double modal_rate = 0.0;

    double fraction(Quadrant q) const {
        return datasets ? static_cast<double>(counts[static_cast<std::size_t>(q)]) / static_cast<double>(datasets)
                        : 0.0;
    }
};

struct StabilityReport {
    std::vector<StabilityEntry> entries;  // sorted by model id
    std::size_t datasets = 0;

    const StabilityEntry* find(std::string_view model) const;
    /// Share of (model, dataset) assignments equal to the model's modal quadrant.
    double modal_agreement() const;
};

/// Per dataset: average each metric over folds, rank models, median-split.
StabilityReport per_dataset_stability(const MetricTable& table, Metric discrimination_axis = Metric::auc);

}  // namespace probmatrix
