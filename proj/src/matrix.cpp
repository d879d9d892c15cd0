#include "probmatrix/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "probmatrix/error.hpp"

namespace probmatrix {

// ---------------------------------------------------------------------------
// Metric table
// ---------------------------------------------------------------------------

std::string_view to_string(Metric metric) {
    switch (metric) {
        case Metric::logloss: return "logloss";
        case Metric::brier: return "brier";
        case Metric::auc: return "auc";
        case Metric::abs_z: return "abs_z";
        case Metric::resolution: return "resolution";
    }
    return "unknown";
}

Metric metric_from_string(std::string_view name) {
    for (auto m : {Metric::logloss, Metric::brier, Metric::auc, Metric::abs_z, Metric::resolution}) {
        if (name == to_string(m)) return m;
    }
    if (name == "brier-resolution") return Metric::resolution;
    if (name == "z" || name == "abs-z") return Metric::abs_z;
    if (name == "log-loss") return Metric::logloss;
    throw InvalidInput("unknown metric '" + std::string(name) + "'");
}

Direction default_direction(Metric metric) {
    return (metric == Metric::auc || metric == Metric::resolution) ? Direction::higher_better
                                                                   : Direction::lower_better;
}

std::optional<double> CellMetrics::get(Metric metric) const {
    switch (metric) {
        case Metric::logloss: return logloss;
        case Metric::brier: return brier;
        case Metric::auc: return auc;
        case Metric::abs_z:
            if (z) return std::abs(*z);
            return std::nullopt;
        case Metric::resolution: return resolution;
    }
    return std::nullopt;
}

void MetricTable::add(const std::string& model, const CellKey& cell, const CellMetrics& metrics) {
    cells_[model][cell] = metrics;
}

const CellMetrics* MetricTable::find(const std::string& model, const CellKey& cell) const {
    const auto m = cells_.find(model);
    if (m == cells_.end()) return nullptr;
    const auto c = m->second.find(cell);
    return c == m->second.end() ? nullptr : &c->second;
}

std::vector<std::string> MetricTable::models() const {
    std::vector<std::string> out;
    for (const auto& [model, _] : cells_) out.push_back(model);
    return out;
}

std::vector<CellKey> MetricTable::cells() const {
    std::set<CellKey> s;
    for (const auto& [_, cells] : cells_) {
        for (const auto& [cell, __] : cells) s.insert(cell);
    }
    return {s.begin(), s.end()};
}

std::vector<std::string> MetricTable::datasets() const {
    std::set<std::string> s;
    for (const auto& c : cells()) s.insert(c.dataset);
    return {s.begin(), s.end()};
}

CellMetrics compute_cell_metrics(const FoldSeries& series, const MetricOptions& options) {
    CellMetrics m;
    m.logloss = log_loss(series, options.clip_eps);
    m.brier = brier_score(series);
    m.auc = try_auc_roc(series);
    if (const auto z = try_spiegelhalter_z(series)) m.z = z->z;
    m.resolution = brier_decomposition(series, options.resolution_scheme, options.resolution_bins).resolution;
    return m;
}

MetricTable compute_metric_table(const PredictionLog& log, const MetricOptions& options) {
    std::map<CellKey, const FoldSeries*> reference;
    MetricTable table;
    for (const auto& [key, series] : log.groups) {
        const CellKey cell{key.dataset, key.fold};
        const auto [it, inserted] = reference.emplace(cell, &series);
        if (!inserted) {
            const auto a = it->second->labels();
            const auto b = series.labels();
            if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) {
                throw InvalidInput("models in (" + key.dataset + ", fold " + std::to_string(key.fold) +
                                   ") do not share the same instances/labels (model " + key.model + ")");
            }
        }
        table.add(key.model, cell, compute_cell_metrics(series, options));
    }
    return table;
}

// ---------------------------------------------------------------------------
// Expected ranks
// ---------------------------------------------------------------------------

std::map<std::string, double> RankSummary::expected() const {
    std::map<std::string, double> out;
    for (const auto& [model, e] : models) out[model] = e.expected_rank;
    return out;
}

std::vector<double> fractional_ranks(const std::vector<double>& values, Direction direction) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const auto better = [&](std::size_t a, std::size_t b) {
        return direction == Direction::lower_better ? values[a] < values[b] : values[a] > values[b];
    };
    std::stable_sort(idx.begin(), idx.end(), better);
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i + 1;
        while (j < idx.size() && values[idx[j]] == values[idx[i]]) ++j;
        const double mid = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) ranks[idx[k]] = mid;
        i = j;
    }
    return ranks;
}

RankSummary expected_ranks(const MetricTable& table, Metric metric, Direction direction) {
    const auto models = table.models();
    if (models.size() < 2) throw InvalidInput("expected ranks need at least 2 models");

    RankSummary out;
    out.metric = metric;
    out.direction = direction;
    for (const auto& m : models) out.models[m];

    bool any_value = false;
    for (const auto& cell : table.cells()) {
        std::vector<std::string> present;
        std::vector<double> values;
        for (const auto& m : models) {
            const auto* cm = table.find(m, cell);
            const auto v = cm ? cm->get(metric) : std::nullopt;
            if (v) {
                present.push_back(m);
                values.push_back(*v);
            } else {
                out.models[m].cells_excluded += 1;
            }
        }
        if (values.empty()) continue;
        any_value = true;
        const auto ranks = fractional_ranks(values, direction);
        for (std::size_t k = 0; k < present.size(); ++k) {
            auto& e = out.models[present[k]];
            e.cell_ranks.push_back(ranks[k]);
            e.cells_used += 1;
        }
    }
    if (!any_value) throw InvalidInput("metric '" + std::string(to_string(metric)) + "' absent from table");

    for (auto& [model, e] : out.models) {
        if (e.cells_used == 0) {
            throw InvalidInput("model '" + model + "' has no cells with metric '" + std::string(to_string(metric)) +
                               "'");
        }
        e.expected_rank = std::accumulate(e.cell_ranks.begin(), e.cell_ranks.end(), 0.0) /
                          static_cast<double>(e.cells_used);
        if (e.cells_excluded > 0) {
            out.warnings.push_back(model + ": " + std::to_string(e.cells_excluded) + " cell(s) excluded from " +
                                   std::string(to_string(metric)) + " ranking (metric undefined)");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Quadrants
// ---------------------------------------------------------------------------

std::string_view to_string(Quadrant q) {
    switch (q) {
        case Quadrant::eagle: return "Eagle";
        case Quadrant::bull: return "Bull";
        case Quadrant::sloth: return "Sloth";
        case Quadrant::mole: return "Mole";
    }
    return "unknown";
}

std::string_view type_label(Quadrant q) {
    switch (q) {
        case Quadrant::eagle: return "Type I";
        case Quadrant::bull: return "Type II";
        case Quadrant::sloth: return "Type III";
        case Quadrant::mole: return "Type IV";
    }
    return "unknown";
}

std::string_view to_string(Prescription p) {
    switch (p) {
        case Prescription::ship_it: return "ship-it";
        case Prescription::apply_venn_abers: return "apply-venn-abers";
        case Prescription::retrain: return "retrain";
        case Prescription::start_over: return "start-over";
    }
    return "unknown";
}

std::string_view to_string(QuadrantRule rule) {
    return rule == QuadrantRule::median_split ? "median-split" : "absolute-z";
}

Quadrant quadrant_from_string(std::string_view name) {
    for (auto q : {Quadrant::eagle, Quadrant::bull, Quadrant::sloth, Quadrant::mole}) {
        if (name == to_string(q)) return q;
    }
    throw InvalidInput("unknown quadrant '" + std::string(name) + "'");
}

Prescription prescription_for(Quadrant q) {
    switch (q) {
        case Quadrant::eagle: return Prescription::ship_it;
        case Quadrant::bull: return Prescription::apply_venn_abers;
        case Quadrant::sloth: return Prescription::retrain;
        case Quadrant::mole: return Prescription::start_over;
    }
    return Prescription::start_over;
}

Quadrant quadrant_for(bool well_calibrated, bool strong_discriminator) {
    if (strong_discriminator) return well_calibrated ? Quadrant::eagle : Quadrant::bull;
    return well_calibrated ? Quadrant::sloth : Quadrant::mole;
}

const QuadrantEntry* QuadrantReport::find(std::string_view model) const {
    for (const auto& e : entries) {
        if (e.model == model) return &e;
    }
    return nullptr;
}

double median(std::vector<double> values) {
    if (values.empty()) throw InvalidInput("median of empty set");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {

void require_same_models(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
    if (a.size() < 2) throw InvalidInput("quadrant assignment needs at least 2 models");
    if (a.size() != b.size() ||
        !std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) { return x.first == y.first; })) {
        throw InvalidInput("discrimination and calibration summaries cover different model sets");
    }
}

std::vector<double> values_of(const std::map<std::string, double>& m) {
    std::vector<double> v;
    v.reserve(m.size());
    for (const auto& [_, x] : m) v.push_back(x);
    return v;
}

}  // namespace

QuadrantReport assign_quadrants_median(const std::map<std::string, double>& discrimination_ranks,
                                       const std::map<std::string, double>& z_ranks) {
    require_same_models(discrimination_ranks, z_ranks);
    QuadrantReport r;
    r.rule = QuadrantRule::median_split;
    r.discrimination_threshold = median(values_of(discrimination_ranks));
    r.calibration_threshold = median(values_of(z_ranks));
    for (const auto& [model, disc] : discrimination_ranks) {
        QuadrantEntry e;
        e.model = model;
        e.discrimination_rank = disc;
        e.z_rank = z_ranks.at(model);
        e.quadrant = quadrant_for(*e.z_rank <= r.calibration_threshold, disc <= r.discrimination_threshold);
        e.prescription = prescription_for(e.quadrant);
        r.entries.push_back(std::move(e));
    }
    return r;
}

QuadrantReport assign_quadrants_median(const RankSummary& discrimination, const RankSummary& z) {
    auto r = assign_quadrants_median(discrimination.expected(), z.expected());
    r.discrimination_axis = discrimination.metric;
    return r;
}

QuadrantReport assign_quadrants_absolute(const std::map<std::string, double>& discrimination_ranks,
                                         const std::map<std::string, double>& mean_abs_z, double z_threshold) {
    require_same_models(discrimination_ranks, mean_abs_z);
    if (!(z_threshold >= 0.0)) throw InvalidInput("z threshold must be non-negative");
    QuadrantReport r;
    r.rule = QuadrantRule::absolute_z;
    r.discrimination_threshold = median(values_of(discrimination_ranks));
    r.calibration_threshold = z_threshold;
    for (const auto& [model, disc] : discrimination_ranks) {
        QuadrantEntry e;
        e.model = model;
        e.discrimination_rank = disc;
        e.mean_abs_z = mean_abs_z.at(model);
        e.quadrant = quadrant_for(*e.mean_abs_z <= z_threshold, disc <= r.discrimination_threshold);
        e.prescription = prescription_for(e.quadrant);
        r.entries.push_back(std::move(e));
    }
    return r;
}

QuadrantReport assign_quadrants_absolute(const RankSummary& discrimination,
                                         const std::map<std::string, double>& mean_abs_z, double z_threshold) {
    auto r = assign_quadrants_absolute(discrimination.expected(), mean_abs_z, z_threshold);
    r.discrimination_axis = discrimination.metric;
    return r;
}

std::map<std::string, double> mean_abs_z(const MetricTable& table) {
    std::map<std::string, double> out;
    for (const auto& [model, cells] : table.by_model()) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& [_, m] : cells) {
            if (m.z) {
                sum += std::abs(*m.z);
                ++n;
            }
        }
        if (n > 0) out[model] = sum / static_cast<double>(n);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Per-dataset stability
// ---------------------------------------------------------------------------

const StabilityEntry* StabilityReport::find(std::string_view model) const {
    for (const auto& e : entries) {
        if (e.model == model) return &e;
    }
    return nullptr;
}

double StabilityReport::modal_agreement() const {
    std::size_t hits = 0;
    std::size_t total = 0;
    for (const auto& e : entries) {
        hits += e.counts[static_cast<std::size_t>(e.modal)];
        total += e.datasets;
    }
    return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
}

StabilityReport per_dataset_stability(const MetricTable& table, Metric discrimination_axis) {
    const auto models = table.models();
    if (models.size() < 2) throw InvalidInput("stability needs at least 2 models");
    const auto datasets = table.datasets();
    if (datasets.empty()) throw InvalidInput("stability needs at least 1 dataset");
    const Direction disc_dir = default_direction(discrimination_axis);

    std::map<std::string, StabilityEntry> acc;
    for (const auto& m : models) acc[m].model = m;

    for (const auto& ds : datasets) {
        std::vector<std::string> present;
        std::vector<double> disc;
        std::vector<double> calib;
        for (const auto& m : models) {
            double d_sum = 0.0, z_sum = 0.0;
            std::size_t d_n = 0, z_n = 0;
            for (const auto& [cell, cm] : table.by_model().at(m)) {
                if (cell.dataset != ds) continue;
                if (const auto v = cm.get(discrimination_axis)) {
                    d_sum += *v;
                    ++d_n;
                }
                if (const auto v = cm.get(Metric::abs_z)) {
                    z_sum += *v;
                    ++z_n;
                }
            }
            if (d_n == 0 || z_n == 0) continue;
            present.push_back(m);
            disc.push_back(d_sum / static_cast<double>(d_n));
            calib.push_back(z_sum / static_cast<double>(z_n));
        }
        if (present.size() < 2) continue;
        const auto disc_ranks = fractional_ranks(disc, disc_dir);
        const auto calib_ranks = fractional_ranks(calib, Direction::lower_better);
        const double disc_cut = median(disc_ranks);
        const double calib_cut = median(calib_ranks);
        for (std::size_t k = 0; k < present.size(); ++k) {
            const auto q = quadrant_for(calib_ranks[k] <= calib_cut, disc_ranks[k] <= disc_cut);
            auto& e = acc[present[k]];
            e.counts[static_cast<std::size_t>(q)] += 1;
            e.datasets += 1;
        }
    }

    StabilityReport out;
    out.datasets = datasets.size();
    for (auto& [_, e] : acc) {
        const auto best = std::max_element(e.counts.begin(), e.counts.end());
        e.modal = static_cast<Quadrant>(best - e.counts.begin());
        e.modal_rate = e.fraction(e.modal);
        out.entries.push_back(e);
    }
    return out;
}

}  // namespace probmatrix
