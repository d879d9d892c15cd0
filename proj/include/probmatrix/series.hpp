#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace probmatrix {

/// Aligned labels and predicted probabilities for one (dataset, fold, model)
/// cell. Construction validates: equal non-zero lengths, labels in {0, 1},
/// probabilities finite and inside [0, 1]. A constructed series is always
/// valid, so metric functions do not re-check.
class FoldSeries {
public:
    FoldSeries(std::vector<std::uint8_t> labels, std::vector<double> probs);

    /// Convenience for literals in tests and bindings.
    FoldSeries(std::span<const int> labels, std::span<const double> probs);

    std::span<const std::uint8_t> labels() const noexcept { return labels_; }
    std::span<const double> probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }

    std::size_t positives() const noexcept { return positives_; }
    std::size_t negatives() const noexcept { return size() - positives_; }
    bool has_both_classes() const noexcept { return positives_ > 0 && positives_ < size(); }

    /// Same labels, new probabilities (validated).
    FoldSeries with_probs(std::vector<double> probs) const;

private:
    std::vector<std::uint8_t> labels_;
    std::vector<double> probs_;
    std::size_t positives_ = 0;
};

}  // namespace probmatrix
