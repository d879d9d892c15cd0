#include "probmatrix/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "probmatrix/error.hpp"

namespace probmatrix {

namespace {

std::vector<std::size_t> order_by_prob(std::span<const double> p) {
    std::vector<std::size_t> idx(p.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
    return idx;
}

struct Group {
    double n = 0.0;
    double prob_sum = 0.0;
    double label_sum = 0.0;
};

// Contiguous groups over the sorted order; `boundary(pos)` says whether a new
// group starts at sorted position pos.
template <typename Boundary>
std::vector<Group> collect_groups(const FoldSeries& s, const std::vector<std::size_t>& order,
                                  Boundary boundary) {
    std::vector<Group> groups;
    const auto p = s.probs();
    const auto y = s.labels();
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        if (pos == 0 || boundary(pos)) groups.emplace_back();
        auto& g = groups.back();
        g.n += 1.0;
        g.prob_sum += p[order[pos]];
        g.label_sum += y[order[pos]];
    }
    return groups;
}

}  // namespace

std::string_view to_string(BinScheme scheme) {
    switch (scheme) {
        case BinScheme::unique_value: return "unique-value";
        case BinScheme::equal_width: return "equal-width";
        case BinScheme::equal_mass: return "equal-mass";
    }
    return "unknown";
}

BinScheme bin_scheme_from_string(std::string_view name) {
    if (name == "unique-value") return BinScheme::unique_value;
    if (name == "equal-width") return BinScheme::equal_width;
    if (name == "equal-mass") return BinScheme::equal_mass;
    throw InvalidInput("unknown binning scheme '" + std::string(name) + "'");
}

double brier_score(const FoldSeries& series) {
    const auto p = series.probs();
    const auto y = series.labels();
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = p[i] - y[i];
        acc += d * d;
    }
    return acc / static_cast<double>(p.size());
}

double log_loss(const FoldSeries& series, double clip_eps) {
    if (!(clip_eps > 0.0 && clip_eps < 0.5)) throw InvalidInput("clip_eps must lie in (0, 0.5)");
    const auto p = series.probs();
    const auto y = series.labels();
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double q = std::clamp(p[i], clip_eps, 1.0 - clip_eps);
        acc -= y[i] ? std::log(q) : std::log1p(-q);
    }
    return acc / static_cast<double>(p.size());
}

double auc_roc(const FoldSeries& series) {
    if (!series.has_both_classes()) throw UndefinedAuc("AUC undefined: series holds a single class");
    const auto p = series.probs();
    const auto y = series.labels();
    const auto order = order_by_prob(p);

    // Mid-ranks are multiples of 1/2, so every partial sum below is exact.
    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        std::size_t pos_in_tie = 0;
        while (j < order.size() && p[order[j]] == p[order[i]]) {
            pos_in_tie += y[order[j]];
            ++j;
        }
        const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
        pos_rank_sum += mid_rank * static_cast<double>(pos_in_tie);
        i = j;
    }
    const double n_pos = static_cast<double>(series.positives());
    const double n_neg = static_cast<double>(series.negatives());
    const double u = pos_rank_sum - n_pos * (n_pos + 1.0) / 2.0;
    return u / (n_pos * n_neg);
}

std::optional<double> try_auc_roc(const FoldSeries& series) {
    if (!series.has_both_classes()) return std::nullopt;
    return auc_roc(series);
}

ZResult spiegelhalter_z(const FoldSeries& series) {
    const auto p = series.probs();
    const auto y = series.labels();
    double num = 0.0;
    double var = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double w = 1.0 - 2.0 * p[i];
        num += (y[i] - p[i]) * w;
        var += w * w * p[i] * (1.0 - p[i]);
    }
    if (!(var > 0.0)) {
        throw DegenerateVariance("Spiegelhalter variance is zero (all probabilities in {0, 0.5, 1})");
    }
    ZResult r;
    r.z = num / std::sqrt(var);
    r.significant = std::abs(r.z) > kZCritical;
    return r;
}

std::optional<ZResult> try_spiegelhalter_z(const FoldSeries& series) {
    try {
        return spiegelhalter_z(series);
    } catch (const DegenerateVariance&) {
        return std::nullopt;
    }
}

DecompositionResult brier_decomposition(const FoldSeries& series, BinScheme scheme, std::size_t bin_count) {
    if (scheme != BinScheme::unique_value && bin_count < 1) {
        throw InvalidInput("bin_count must be at least 1 for binned schemes");
    }
    const auto p = series.probs();
    const auto order = order_by_prob(p);
    const std::size_t n = series.size();

    std::vector<Group> groups;
    switch (scheme) {
        case BinScheme::unique_value:
            groups = collect_groups(series, order,
                                    [&](std::size_t pos) { return p[order[pos]] != p[order[pos - 1]]; });
            break;
        case BinScheme::equal_width: {
            const auto bin_of = [&](double v) {
                const auto k = static_cast<std::size_t>(v * static_cast<double>(bin_count));
                return std::min(k, bin_count - 1);
            };
            groups = collect_groups(series, order, [&](std::size_t pos) {
                return bin_of(p[order[pos]]) != bin_of(p[order[pos - 1]]);
            });
            break;
        }
        case BinScheme::equal_mass: {
            // Sorted position pos belongs to bin floor(pos * K / N).
            const auto bin_of = [&](std::size_t pos) { return pos * bin_count / n; };
            groups = collect_groups(series, order, [&](std::size_t pos) { return bin_of(pos) != bin_of(pos - 1); });
            break;
        }
    }

    const double total = static_cast<double>(n);
    const double base_rate = static_cast<double>(series.positives()) / total;

    DecompositionResult r;
    r.scheme = scheme;
    r.bin_count = groups.size();
    for (const auto& g : groups) {
        const double mean_p = g.prob_sum / g.n;
        const double freq = g.label_sum / g.n;
        r.reliability += g.n * (mean_p - freq) * (mean_p - freq);
        r.resolution += g.n * (freq - base_rate) * (freq - base_rate);
    }
    r.reliability /= total;
    r.resolution /= total;
    r.uncertainty = base_rate * (1.0 - base_rate);
    r.brier = brier_score(series);
    r.residual = r.brier - (r.reliability - r.resolution + r.uncertainty);
    return r;
}

}  // namespace probmatrix
