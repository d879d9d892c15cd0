#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "probmatrix/series.hpp"

namespace probmatrix {

struct SeriesKey {
    std::string dataset;
    int fold = 0;
    std::string model;

    auto operator<=>(const SeriesKey&) const = default;
};

/// One row of a prediction log.
struct PredictionRecord {
    std::string dataset;
    int fold = 0;
    std::string model;
    int y = 0;
    double p = 0.0;
};

/// Validated prediction log grouped by (dataset, fold, model). Iteration
/// order is the key order, which makes every downstream computation
/// independent of input row order across groups.
struct PredictionLog {
    std::map<SeriesKey, FoldSeries> groups;
    std::size_t rows = 0;          // accepted rows
    std::size_t skipped_rows = 0;  // lenient mode only
    std::vector<std::string> warnings;

    std::vector<std::string> models() const;
    std::vector<std::string> datasets() const;
};

/// Groups records and validates them (each group needs >= 2 records).
PredictionLog group_records(const std::vector<PredictionRecord>& records);

}  // namespace probmatrix
