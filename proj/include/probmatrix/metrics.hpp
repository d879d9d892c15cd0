#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "probmatrix/series.hpp"

namespace probmatrix {

/// Two-sided 5% critical value for the Spiegelhalter test.
inline constexpr double kZCritical = 1.96;
inline constexpr double kDefaultClipEps = 1e-15;

struct ZResult {
    double z = 0.0;
    bool significant = false;  // |z| > kZCritical
};

enum class BinScheme { unique_value, equal_width, equal_mass };

std::string_view to_string(BinScheme scheme);
BinScheme bin_scheme_from_string(std::string_view name);

/// Murphy decomposition BS = REL - RES + UNC. `residual` is whatever the
/// grouping leaves over; it is zero (up to rounding) only when the
/// probabilities inside each group are constant, i.e. unique-value grouping.
struct DecompositionResult {
    double reliability = 0.0;
    double resolution = 0.0;
    double uncertainty = 0.0;
    double residual = 0.0;
    double brier = 0.0;
    std::size_t bin_count = 0;  // non-empty groups
    BinScheme scheme = BinScheme::unique_value;
};

double brier_score(const FoldSeries& series);

/// Mean negative log-likelihood with probabilities clipped to
/// [clip_eps, 1 - clip_eps]. clip_eps must lie in (0, 0.5).
double log_loss(const FoldSeries& series, double clip_eps = kDefaultClipEps);

/// Concordance probability, ties counted as one half. Rank-sum formulation,
/// O(N log N). Throws UndefinedAuc for single-class series.
double auc_roc(const FoldSeries& series);

/// As auc_roc, but returns nullopt instead of throwing on single-class input.
std::optional<double> try_auc_roc(const FoldSeries& series);

/// z = sum (y - p)(1 - 2p) / sqrt(sum (1 - 2p)^2 p (1 - p)).
/// Throws DegenerateVariance when the denominator is zero.
ZResult spiegelhalter_z(const FoldSeries& series);

std::optional<ZResult> try_spiegelhalter_z(const FoldSeries& series);

/// bin_count is ignored for unique_value and must be >= 1 otherwise.
DecompositionResult brier_decomposition(const FoldSeries& series,
                                        BinScheme scheme = BinScheme::unique_value,
                                        std::size_t bin_count = 10);

}  // namespace probmatrix
