#include "probmatrix/series.hpp"

#include <cmath>
#include <string>

#include "probmatrix/error.hpp"

namespace probmatrix {

namespace {

std::vector<std::uint8_t> to_labels(std::span<const int> labels) {
    std::vector<std::uint8_t> out;
    out.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) {
            throw InvalidInput("label at index " + std::to_string(i) + " is not 0 or 1");
        }
        out.push_back(static_cast<std::uint8_t>(labels[i]));
    }
    return out;
}

}  // namespace

FoldSeries::FoldSeries(std::vector<std::uint8_t> labels, std::vector<double> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
    if (probs_.empty()) throw InvalidInput("empty series");
    if (labels_.size() != probs_.size()) {
        throw InvalidInput("label and probability lengths differ (" + std::to_string(labels_.size()) +
                           " vs " + std::to_string(probs_.size()) + ")");
    }
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (labels_[i] > 1) throw InvalidInput("label at index " + std::to_string(i) + " is not 0 or 1");
        const double p = probs_[i];
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
            throw InvalidInput("probability at index " + std::to_string(i) + " outside [0, 1]");
        }
        positives_ += labels_[i];
    }
}

FoldSeries::FoldSeries(std::span<const int> labels, std::span<const double> probs)
    : FoldSeries(to_labels(labels), std::vector<double>(probs.begin(), probs.end())) {}

FoldSeries FoldSeries::with_probs(std::vector<double> probs) const {
    return FoldSeries(labels_, std::move(probs));
}

}  // namespace probmatrix
