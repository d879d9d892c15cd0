#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "probmatrix/matrix.hpp"
#include "probmatrix/metrics.hpp"

namespace probmatrix {

// ---------------------------------------------------------------------------
// Wilcoxon signed-rank
// ---------------------------------------------------------------------------

enum class Alternative { two_sided, greater, less };
enum class WilcoxonMethod { exact, normal_approx };

std::string_view to_string(Alternative a);
Alternative alternative_from_string(std::string_view name);
std::string_view to_string(WilcoxonMethod m);

struct WilcoxonResult {
    double w_statistic = 0.0;  // sum of ranks of positive differences
    std::size_t n_effective = 0;
    double p_value = 1.0;
    WilcoxonMethod method = WilcoxonMethod::exact;
    std::size_t tie_count = 0;  // |d| values sharing a rank with another
};

struct WilcoxonOptions {
    std::size_t min_effective = 5;
    std::size_t exact_max_n = 25;
};

/// Test on d = a - b with zero differences dropped. Exact null distribution
/// when n_effective <= exact_max_n and no |d| ties, otherwise the normal
/// approximation with tie-corrected variance and continuity correction.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    Alternative alternative = Alternative::two_sided,
                                    const WilcoxonOptions& options = {});

/// Number of subsets of {1..n} for each rank sum w = 0..n(n+1)/2.
std::vector<double> signed_rank_null_counts(std::size_t n);

/// Exact p-value for integer statistic w under n untied ranks.
double wilcoxon_exact_p(double w, std::size_t n, Alternative alternative);

// ---------------------------------------------------------------------------
// Bootstrap
// ---------------------------------------------------------------------------

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// Percentile interval of the mean, resampling each model's values with
/// replacement. Values are sorted first, so the result does not depend on
/// list order; each model draws from its own substream keyed by its name.
std::map<std::string, Interval> bootstrap_ci(const std::map<std::string, std::vector<double>>& values,
                                             std::size_t resamples, double level, std::uint64_t seed);

/// Linear-interpolation (type 7) quantile of sorted data.
double quantile_sorted(std::span<const double> sorted, double q);

// ---------------------------------------------------------------------------
// Summaries
// ---------------------------------------------------------------------------

struct MiscalibrationSummary {
    double mean_abs_z = 0.0;
    double median_abs_z = 0.0;
    double pct_significant = 0.0;  // 0..100
    std::size_t cells = 0;
};

MiscalibrationSummary miscalibration_rate(std::span<const ZResult> z_per_cell);

/// z results of one model across its cells (degenerate cells skipped).
std::vector<ZResult> z_results(const MetricTable& table, const std::string& model);

struct HeadToHead {
    Metric metric = Metric::logloss;
    std::map<std::string, std::size_t> wins;
    std::size_t ties = 0;
    std::size_t datasets = 0;
};

/// Per dataset the strictly best fold-mean wins; exact ties award nothing.
HeadToHead head_to_head_wins(const MetricTable& table, const std::set<std::string>& models, Metric metric);

/// Paired per-cell values of a metric for two models (cells where both are
/// defined), in cell order.
std::pair<std::vector<double>, std::vector<double>> paired_values(const MetricTable& table, const std::string& a,
                                                                  const std::string& b, Metric metric);

struct MetricEffect {
    double mean_pct_delta = 0.0;
    double improved_fraction = 0.0;
    std::size_t cells = 0;
    std::size_t excluded_zero_base = 0;
};

struct EffectSummary {
    std::string model;
    std::map<Metric, MetricEffect> metrics;  // logloss, brier, auc, abs_z
};

/// Mean of 100 * (calibrated - base) / |base| over cells.
EffectSummary calibration_effect(const MetricTable& base, const MetricTable& calibrated, const std::string& model);

/// Spearman correlation (Pearson on fractional ranks).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace probmatrix
