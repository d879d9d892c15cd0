#include "probmatrix/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "probmatrix/error.hpp"
#include "probmatrix/rng.hpp"

namespace probmatrix {

std::string_view to_string(Alternative a) {
    switch (a) {
        case Alternative::two_sided: return "two-sided";
        case Alternative::greater: return "greater";
        case Alternative::less: return "less";
    }
    return "unknown";
}

Alternative alternative_from_string(std::string_view name) {
    for (auto a : {Alternative::two_sided, Alternative::greater, Alternative::less}) {
        if (name == to_string(a)) return a;
    }
    throw InvalidInput("unknown alternative '" + std::string(name) + "'");
}

std::string_view to_string(WilcoxonMethod m) { return m == WilcoxonMethod::exact ? "exact" : "normal-approx"; }

std::vector<double> signed_rank_null_counts(std::size_t n) {
    const std::size_t max_w = n * (n + 1) / 2;
    std::vector<double> counts(max_w + 1, 0.0);
    counts[0] = 1.0;
    // Subset-sum DP: add rank k to every existing subset.
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t w = max_w; w >= k; --w) counts[w] += counts[w - k];
    }
    return counts;
}

double wilcoxon_exact_p(double w, std::size_t n, Alternative alternative) {
    const auto counts = signed_rank_null_counts(n);
    const double total = std::ldexp(1.0, static_cast<int>(n));
    double lower = 0.0;
    double upper = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        const double kk = static_cast<double>(k);
        if (kk <= w) lower += counts[k];
        if (kk >= w) upper += counts[k];
    }
    lower /= total;
    upper /= total;
    switch (alternative) {
        case Alternative::greater: return upper;
        case Alternative::less: return lower;
        case Alternative::two_sided: return std::min(1.0, 2.0 * std::min(lower, upper));
    }
    return 1.0;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b, Alternative alternative,
                                    const WilcoxonOptions& options) {
    if (a.size() != b.size()) throw InvalidInput("Wilcoxon samples differ in length");
    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (!std::isfinite(d)) throw InvalidInput("Wilcoxon samples contain non-finite values");
        if (d != 0.0) diffs.push_back(d);
    }
    WilcoxonResult r;
    r.n_effective = diffs.size();
    if (r.n_effective < std::max<std::size_t>(options.min_effective, 1)) {
        throw InsufficientData("Wilcoxon test needs at least " + std::to_string(options.min_effective) +
                               " non-zero differences, got " + std::to_string(r.n_effective));
    }

    std::vector<double> mags(diffs.size());
    for (std::size_t i = 0; i < diffs.size(); ++i) mags[i] = std::abs(diffs[i]);
    const auto ranks = fractional_ranks(mags, Direction::lower_better);

    std::vector<double> sorted = mags;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        if (j - i > 1) {
            r.tie_count += j - i;
            tie_term += t * t * t - t;
        }
        i = j;
    }

    for (std::size_t i = 0; i < diffs.size(); ++i) {
        if (diffs[i] > 0.0) r.w_statistic += ranks[i];
    }

    const double n = static_cast<double>(r.n_effective);
    if (r.n_effective <= options.exact_max_n && r.tie_count == 0) {
        r.method = WilcoxonMethod::exact;
        r.p_value = wilcoxon_exact_p(r.w_statistic, r.n_effective, alternative);
        return r;
    }

    r.method = WilcoxonMethod::normal_approx;
    const double mu = n * (n + 1.0) / 4.0;
    const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    const double sigma = std::sqrt(var);
    const double dev = r.w_statistic - mu;
    switch (alternative) {
        case Alternative::two_sided: {
            const double z = std::max(std::abs(dev) - 0.5, 0.0) / sigma;
            r.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
            break;
        }
        case Alternative::greater: {
            const double z = (dev - 0.5) / sigma;
            r.p_value = 0.5 * std::erfc(z / std::sqrt(2.0));
            break;
        }
        case Alternative::less: {
            const double z = (dev + 0.5) / sigma;
            r.p_value = 0.5 * std::erfc(-z / std::sqrt(2.0));
            break;
        }
    }
    return r;
}

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw InvalidInput("quantile of empty data");
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::map<std::string, Interval> bootstrap_ci(const std::map<std::string, std::vector<double>>& values,
                                             std::size_t resamples, double level, std::uint64_t seed) {
    if (resamples < 1000) throw InvalidInput("bootstrap needs at least 1000 resamples");
    if (!(level > 0.0 && level < 1.0)) throw InvalidInput("bootstrap level must lie in (0, 1)");
    std::map<std::string, Interval> out;
    for (const auto& [model, raw] : values) {
        if (raw.empty()) throw InvalidInput("bootstrap: no values for '" + model + "'");
        std::vector<double> data = raw;
        std::sort(data.begin(), data.end());
        Rng rng(substream_seed(seed, stable_hash(model)));
        std::vector<double> means(resamples);
        const auto n = static_cast<std::uint64_t>(data.size());
        for (auto& m : means) {
            double s = 0.0;
            for (std::uint64_t k = 0; k < n; ++k) s += data[rng.below(n)];
            m = s / static_cast<double>(n);
        }
        std::sort(means.begin(), means.end());
        out[model] = {quantile_sorted(means, (1.0 - level) / 2.0), quantile_sorted(means, (1.0 + level) / 2.0)};
    }
    return out;
}

MiscalibrationSummary miscalibration_rate(std::span<const ZResult> z_per_cell) {
    if (z_per_cell.empty()) throw InvalidInput("miscalibration summary of empty set");
    MiscalibrationSummary s;
    s.cells = z_per_cell.size();
    std::vector<double> mags;
    mags.reserve(z_per_cell.size());
    std::size_t sig = 0;
    for (const auto& z : z_per_cell) {
        mags.push_back(std::abs(z.z));
        if (z.significant) ++sig;
    }
    s.mean_abs_z = std::accumulate(mags.begin(), mags.end(), 0.0) / static_cast<double>(mags.size());
    s.median_abs_z = median(mags);
    s.pct_significant = 100.0 * static_cast<double>(sig) / static_cast<double>(s.cells);
    return s;
}

std::vector<ZResult> z_results(const MetricTable& table, const std::string& model) {
    std::vector<ZResult> out;
    const auto it = table.by_model().find(model);
    if (it == table.by_model().end()) throw InvalidInput("model '" + model + "' not in table");
    for (const auto& [_, m] : it->second) {
        if (m.z) out.push_back({*m.z, std::abs(*m.z) > kZCritical});
    }
    return out;
}

HeadToHead head_to_head_wins(const MetricTable& table, const std::set<std::string>& models, Metric metric) {
    if (models.empty()) throw InvalidInput("head-to-head needs at least one model");
    for (const auto& m : models) {
        if (!table.by_model().count(m)) throw InvalidInput("model '" + m + "' not in table");
    }
    const auto datasets = table.datasets();
    if (datasets.empty()) throw InvalidInput("head-to-head needs at least one dataset");
    const Direction dir = default_direction(metric);

    HeadToHead out;
    out.metric = metric;
    out.datasets = datasets.size();
    for (const auto& m : models) out.wins[m] = 0;
    for (const auto& ds : datasets) {
        std::vector<std::pair<std::string, double>> means;
        for (const auto& m : models) {
            double sum = 0.0;
            std::size_t n = 0;
            for (const auto& [cell, cm] : table.by_model().at(m)) {
                if (cell.dataset != ds) continue;
                if (const auto v = cm.get(metric)) {
                    sum += *v;
                    ++n;
                }
            }
            if (n > 0) means.emplace_back(m, sum / static_cast<double>(n));
        }
        if (means.empty()) {
            ++out.ties;
            continue;
        }
        const auto better = [&](double x, double y) { return dir == Direction::lower_better ? x < y : x > y; };
        double best = means.front().second;
        for (const auto& [_, v] : means) {
            if (better(v, best)) best = v;
        }
        std::size_t at_best = 0;
        std::string winner;
        for (const auto& [m, v] : means) {
            if (v == best) {
                ++at_best;
                winner = m;
            }
        }
        if (at_best == 1) {
            ++out.wins[winner];
        } else {
            ++out.ties;
        }
    }
    return out;
}

std::pair<std::vector<double>, std::vector<double>> paired_values(const MetricTable& table, const std::string& a,
                                                                  const std::string& b, Metric metric) {
    const auto ia = table.by_model().find(a);
    const auto ib = table.by_model().find(b);
    if (ia == table.by_model().end() || ib == table.by_model().end()) {
        throw InvalidInput("paired values: model not in table");
    }
    std::pair<std::vector<double>, std::vector<double>> out;
    for (const auto& [cell, ma] : ia->second) {
        const auto jb = ib->second.find(cell);
        if (jb == ib->second.end()) continue;
        const auto va = ma.get(metric);
        const auto vb = jb->second.get(metric);
        if (va && vb) {
            out.first.push_back(*va);
            out.second.push_back(*vb);
        }
    }
    return out;
}

EffectSummary calibration_effect(const MetricTable& base, const MetricTable& calibrated, const std::string& model) {
    const auto ib = base.by_model().find(model);
    const auto ic = calibrated.by_model().find(model);
    if (ib == base.by_model().end() || ic == calibrated.by_model().end()) {
        throw InvalidInput("calibration effect: model '" + model + "' missing from a table");
    }
    const auto& bcells = ib->second;
    const auto& ccells = ic->second;
    if (bcells.size() != ccells.size() ||
        !std::equal(bcells.begin(), bcells.end(), ccells.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first; })) {
        throw InvalidInput("calibration effect: base and calibrated tables cover different cells");
    }

    EffectSummary out;
    out.model = model;
    for (auto metric : {Metric::logloss, Metric::brier, Metric::auc, Metric::abs_z}) {
        const Direction dir = default_direction(metric);
        MetricEffect e;
        double delta_sum = 0.0;
        std::size_t improved = 0;
        for (const auto& [cell, bm] : bcells) {
            const auto bv = bm.get(metric);
            const auto cv = ccells.at(cell).get(metric);
            if (!bv || !cv) continue;
            if (*bv == 0.0) {
                ++e.excluded_zero_base;
                continue;
            }
            delta_sum += 100.0 * (*cv - *bv) / std::abs(*bv);
            if (dir == Direction::lower_better ? *cv < *bv : *cv > *bv) ++improved;
            ++e.cells;
        }
        if (e.cells > 0) {
            e.mean_pct_delta = delta_sum / static_cast<double>(e.cells);
            e.improved_fraction = static_cast<double>(improved) / static_cast<double>(e.cells);
        }
        out.metrics[metric] = e;
    }
    return out;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidInput("spearman needs two equal-length samples (n >= 2)");
    const auto rx = fractional_ranks(x, Direction::lower_better);
    const auto ry = fractional_ranks(y, Direction::lower_better);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw InvalidInput("spearman undefined for constant input");
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace probmatrix
