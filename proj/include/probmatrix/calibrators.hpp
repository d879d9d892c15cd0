#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "probmatrix/series.hpp"

namespace probmatrix {

enum class CalibratorKind { platt, isotonic, beta, temperature, venn_abers };

std::string_view to_string(CalibratorKind kind);
CalibratorKind calibrator_kind_from_string(std::string_view name);

// ---------------------------------------------------------------------------
// Fitted parameters, one struct per kind.
// ---------------------------------------------------------------------------

/// sigma(A * logit(p) + B)
struct PlattParams {
    double a = 1.0;
    double b = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Step function through (score, value) breakpoints; values non-decreasing.
struct IsotonicParams {
    std::vector<double> scores;
    std::vector<double> values;
};

/// sigma(a * ln p - b * ln(1 - p) + c), a, b >= 0.
struct BetaParams {
    double a = 1.0;
    double b = 1.0;
    double c = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// sigma(logit(p) / T), T > 0.
struct TemperatureParams {
    double temperature = 1.0;
};

/// Calibration pairs retained for inductive Venn-Abers prediction, sorted by
/// score.
struct VennAbersParams {
    std::vector<double> scores;
    std::vector<std::uint8_t> labels;
};

/// A fitted (or empty) calibration map. A default-constructed model is
/// unfitted; applying it raises UsageError.
class CalibratorModel {
public:
    using Params = std::variant<std::monostate, PlattParams, IsotonicParams, BetaParams, TemperatureParams,
                                VennAbersParams>;

    CalibratorModel() = default;
    explicit CalibratorModel(Params params) : params_(std::move(params)) {}

    bool fitted() const noexcept { return !std::holds_alternative<std::monostate>(params_); }
    CalibratorKind kind() const;
    const Params& params() const noexcept { return params_; }

    template <typename T>
    const T& as() const {
        return std::get<T>(params_);
    }

private:
    Params params_;
};

struct VennAbersOutput {
    double p0 = 0.0;
    double p1 = 0.0;
    double merged = 0.0;  // p1 / (1 - p0 + p1)
};

struct PlattOptions {
    bool smooth_targets = true;
    double gradient_tolerance = 1e-10;
    int max_iterations = 100;
};

struct BetaOptions {
    double gradient_tolerance = 1e-8;
    int max_iterations = 5000;
};

struct TemperatureOptions {
    double log_lower = -2.995732273553991;  // ln 0.05
    double log_upper = 2.995732273553991;   // ln 20
    double width_tolerance = 1e-6;
};

enum class VennAbersMode {
    naive,   // one pair of isotonic refits per test score
    cached,  // memoize by insertion slot among the calibration scores
};

/// Pool-adjacent-violators on values already ordered by their score.
/// Returns the fitted value for every input position. Weights default to 1.
std::vector<double> pool_adjacent_violators(std::span<const double> values,
                                            std::span<const double> weights = {});

CalibratorModel fit_platt(const FoldSeries& cal, const PlattOptions& options = {});
CalibratorModel fit_isotonic(const FoldSeries& cal);
CalibratorModel fit_beta(const FoldSeries& cal, const BetaOptions& options = {});
CalibratorModel fit_temperature(const FoldSeries& cal, const TemperatureOptions& options = {});
CalibratorModel fit_venn_abers(const FoldSeries& cal);

/// Dispatches on kind with default options.
CalibratorModel fit_calibrator(CalibratorKind kind, const FoldSeries& cal);

std::vector<VennAbersOutput> venn_abers_predict(const FoldSeries& cal, std::span<const double> test_scores,
                                                VennAbersMode mode = VennAbersMode::naive);

std::vector<VennAbersOutput> venn_abers_predict(const VennAbersParams& model, std::span<const double> test_scores,
                                                VennAbersMode mode = VennAbersMode::naive);

/// Element-wise application; Venn-Abers models return the merged probability.
std::vector<double> apply_calibrator(const CalibratorModel& model, std::span<const double> probs);

double apply_platt(const PlattParams& m, double p);
double apply_isotonic(const IsotonicParams& m, double p);
double apply_beta(const BetaParams& m, double p);
double apply_temperature(const TemperatureParams& m, double p);

nlohmann::json to_json(const CalibratorModel& model);
CalibratorModel calibrator_from_json(const nlohmann::json& doc);

}  // namespace probmatrix
