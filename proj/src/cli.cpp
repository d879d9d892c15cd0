#include "probmatrix/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "probmatrix/calibrators.hpp"
#include "probmatrix/error.hpp"
#include "probmatrix/matrix.hpp"
#include "probmatrix/metrics.hpp"
#include "probmatrix/report_io.hpp"
#include "probmatrix/rng.hpp"
#include "probmatrix/stats.hpp"
#include "probmatrix/synth.hpp"

namespace probmatrix::cli {

namespace fs = std::filesystem;

namespace {

std::string fixed(double v, int digits = 2) {
    if (!std::isfinite(v)) return "n/a";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

ParseOptions parse_options(const RunConfig& cfg) {
    ParseOptions o;
    o.strict = !cfg.lenient;
    o.columns = parse_column_map(cfg.columns);
    if (!cfg.delimiter.empty()) {
        if (cfg.delimiter == "tab" || cfg.delimiter == "\\t") o.delimiter = '\t';
        else if (cfg.delimiter.size() == 1) o.delimiter = cfg.delimiter[0];
        else throw UsageError("delimiter must be a single character or 'tab'");
    }
    return o;
}

MetricOptions metric_options(const RunConfig& cfg) {
    MetricOptions o;
    o.clip_eps = cfg.clip_eps;
    if (cfg.scheme != "unique-value") o.resolution_scheme = bin_scheme_from_string(cfg.scheme);
    o.resolution_bins = cfg.bins;
    return o;
}

Metric discrimination_axis(const RunConfig& cfg) {
    if (cfg.axis == "auc") return Metric::auc;
    if (cfg.axis == "brier-resolution") return Metric::resolution;
    throw UsageError("--axis must be 'auc' or 'brier-resolution'");
}

PredictionLog load_input(const RunConfig& cfg) {
    if (cfg.inputs.empty()) throw UsageError(cfg.command + ": --input is required");
    const auto opts = parse_options(cfg);
    PredictionLog merged;
    for (const auto& path : cfg.inputs) {
        auto log = read_predictions_file(path, opts);
        for (auto& [key, series] : log.groups) {
            if (!merged.groups.emplace(key, std::move(series)).second) {
                throw InvalidInput("group (" + key.dataset + ", " + std::to_string(key.fold) + ", " + key.model +
                                   ") appears in more than one input file");
            }
        }
        merged.rows += log.rows;
        merged.skipped_rows += log.skipped_rows;
        for (auto& w : log.warnings) merged.warnings.push_back(path + ": " + w);
    }
    return merged;
}

fs::path prepare_output(const RunConfig& cfg) {
    fs::path dir(cfg.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw InvalidInput("cannot create output directory '" + cfg.output + "'");
    return dir;
}

void write_report(const fs::path& dir, const nlohmann::json& doc) {
    write_text_file((dir / "report.json").string(), dump_report(doc));
}

void print_quadrant_table(std::ostream& out, const QuadrantReport& q) {
    out << "rule: " << to_string(q.rule) << "  discrimination threshold: " << fixed(q.discrimination_threshold)
        << "  calibration threshold: " << fixed(q.calibration_threshold) << "\n";
    out << pad("model", 16) << pad("disc_rank", 11) << pad("z_rank", 9) << pad("mean|z|", 9) << pad("quadrant", 10)
        << "prescription\n";
    for (const auto& e : q.entries) {
        out << pad(e.model, 16) << pad(fixed(e.discrimination_rank), 11)
            << pad(e.z_rank ? fixed(*e.z_rank) : "-", 9) << pad(e.mean_abs_z ? fixed(*e.mean_abs_z) : "-", 9)
            << pad(std::string(to_string(e.quadrant)), 10) << to_string(e.prescription) << "\n";
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
    CohortSpec cohort;
    cohort.n = cfg.n;
    cohort.datasets = cfg.datasets;
    cohort.folds = cfg.folds;
    cohort.base_rate = cfg.base_rate;
    cohort.seed = cfg.seed;
    if (cfg.split == "test") cohort.split = CohortSplit::test;
    else if (cfg.split == "calibration") cohort.split = CohortSplit::calibration;
    else throw UsageError("--split must be 'test' or 'calibration'");

    std::vector<ModelProfile> models;
    if (cfg.panel == "archetypes") {
        models = archetype_panel();
    } else if (cfg.panel == "wide") {
        models = wide_panel();
    } else if (cfg.panel == "single") {
        auto p = archetype_profile(archetype_from_string(cfg.archetype));
        if (cfg.separation >= 0.0) p.separation = cfg.separation;
        if (cfg.gamma >= 0.0) p.distortion_gamma = cfg.gamma;
        p.noise = cfg.noise;
        p.shrink = cfg.shrink;
        models.push_back(p);
    } else {
        throw UsageError("--panel must be 'archetypes', 'wide' or 'single'");
    }

    const auto records = generate_cohort(models, cohort);
    const auto dir = prepare_output(cfg);
    std::ostringstream csv;
    write_records(csv, records);
    write_text_file((dir / "predictions.csv").string(), csv.str());
    out << "synth: wrote " << records.size() << " records (" << models.size() << " model(s), " << cohort.datasets
        << " dataset(s) x " << cohort.folds << " fold(s)) to " << (dir / "predictions.csv").string() << "\n";
    return kExitOk;
}

int cmd_diagnose(const RunConfig& cfg, std::ostream& out) {
    const auto log = load_input(cfg);
    const auto scheme = bin_scheme_from_string(cfg.scheme);
    const auto table = compute_metric_table(log, metric_options(cfg));

    nlohmann::json per_model = nlohmann::json::object();
    out << pad("model", 16) << pad("cells", 7) << pad("logloss", 10) << pad("brier", 10) << pad("auc", 8)
        << pad("mean|z|", 9) << pad("%sig", 7) << pad("REL", 9) << "RES\n";
    for (const auto& model : table.models()) {
        double ll = 0, br = 0, auc = 0, rel = 0, res = 0, unc = 0;
        std::size_t n = 0, n_auc = 0;
        for (const auto& [cell, m] : table.by_model().at(model)) {
            ll += m.logloss;
            br += m.brier;
            if (m.auc) {
                auc += *m.auc;
                ++n_auc;
            }
            ++n;
        }
        for (const auto& [key, series] : log.groups) {
            if (key.model != model) continue;
            const auto d = brier_decomposition(series, scheme, cfg.bins);
            rel += d.reliability;
            res += d.resolution;
            unc += d.uncertainty;
        }
        const double nn = static_cast<double>(n);
        const auto zs = z_results(table, model);
        nlohmann::json entry = {{"cells", n},
                                {"mean_logloss", ll / nn},
                                {"mean_brier", br / nn},
                                {"mean_auc", n_auc ? nlohmann::json(auc / static_cast<double>(n_auc)) : nlohmann::json()},
                                {"auc_cells", n_auc},
                                {"mean_reliability", rel / nn},
                                {"mean_resolution", res / nn},
                                {"mean_uncertainty", unc / nn}};
        std::string maz = "n/a", sig = "n/a";
        if (!zs.empty()) {
            const auto mis = miscalibration_rate(zs);
            entry["miscalibration"] = to_json(mis);
            maz = fixed(mis.mean_abs_z);
            sig = fixed(mis.pct_significant, 1);
        } else {
            entry["miscalibration"] = nullptr;
        }
        per_model[model] = entry;
        out << pad(model, 16) << pad(std::to_string(n), 7) << pad(fixed(ll / nn, 4), 10) << pad(fixed(br / nn, 4), 10)
            << pad(n_auc ? fixed(auc / static_cast<double>(n_auc), 3) : "n/a", 8) << pad(maz, 9) << pad(sig, 7)
            << pad(fixed(rel / nn, 4), 9) << fixed(res / nn, 4) << "\n";
    }

    ReportInput in;
    in.command = cfg.command;
    in.config = echo(cfg);
    in.stats = {{"diagnose", per_model}, {"decomposition_scheme", std::string(to_string(scheme))}};
    in.warnings = log.warnings;
    write_report(prepare_output(cfg), emit_report(in));
    return kExitOk;
}

int cmd_matrix(const RunConfig& cfg, std::ostream& out) {
    if (cfg.rule != "median" && cfg.rule != "absolute") throw UsageError("--rule must be 'median' or 'absolute'");
    const bool absolute = cfg.rule == "absolute";

    ReportInput in;
    in.command = cfg.command;
    in.config = echo(cfg);

    QuadrantReport report;
    if (!cfg.ranks_input.empty()) {
        std::ifstream f(cfg.ranks_input);
        if (!f) throw InvalidInput("cannot open '" + cfg.ranks_input + "'");
        const auto rows = parse_rank_table(f);
        std::map<std::string, double> disc, z, maz;
        for (const auto& r : rows) {
            disc[r.model] = r.auc_rank;
            z[r.model] = r.z_rank;
            if (r.mean_abs_z) maz[r.model] = *r.mean_abs_z;
        }
        if (absolute) {
            if (maz.size() != disc.size()) throw InvalidInput("absolute rule needs mean_abs_z for every model");
            report = assign_quadrants_absolute(disc, maz, cfg.z_threshold);
            for (auto& e : report.entries) e.z_rank = z.at(e.model);
        } else {
            report = assign_quadrants_median(disc, z);
            for (auto& e : report.entries) {
                if (const auto it = maz.find(e.model); it != maz.end()) e.mean_abs_z = it->second;
            }
        }
        report.discrimination_axis = Metric::auc;
    } else {
        const auto log = load_input(cfg);
        const auto table = compute_metric_table(log, metric_options(cfg));
        const Metric axis = discrimination_axis(cfg);
        const auto disc = expected_ranks(table, axis);
        const auto zr = expected_ranks(table, Metric::abs_z);
        const auto maz = mean_abs_z(table);
        if (absolute) {
            report = assign_quadrants_absolute(disc, maz, cfg.z_threshold);
            for (auto& e : report.entries) e.z_rank = zr.models.at(e.model).expected_rank;
        } else {
            report = assign_quadrants_median(disc, zr);
            for (auto& e : report.entries) {
                if (const auto it = maz.find(e.model); it != maz.end()) e.mean_abs_z = it->second;
            }
        }

        std::map<std::string, std::vector<double>> disc_cells, z_cells;
        for (const auto& [m, e] : disc.models) disc_cells[m] = e.cell_ranks;
        for (const auto& [m, e] : zr.models) z_cells[m] = e.cell_ranks;
        in.discrimination_ci = bootstrap_ci(disc_cells, cfg.resamples, cfg.level, cfg.seed);
        in.z_ci = bootstrap_ci(z_cells, cfg.resamples, cfg.level, substream_seed(cfg.seed, 1));
        in.mean_abs_z = maz;

        nlohmann::json mis = nlohmann::json::object();
        for (const auto& m : table.models()) {
            const auto zs = z_results(table, m);
            mis[m] = zs.empty() ? nlohmann::json() : to_json(miscalibration_rate(zs));
        }
        in.stats["miscalibration"] = mis;
        in.stats["ranks"] = {{"discrimination", to_json(disc)}, {"z", to_json(zr)}};
        in.stats["stability"] = to_json(per_dataset_stability(table, axis));
        in.warnings = log.warnings;
        in.warnings.insert(in.warnings.end(), disc.warnings.begin(), disc.warnings.end());
        in.warnings.insert(in.warnings.end(), zr.warnings.begin(), zr.warnings.end());
    }

    in.quadrants = report;
    const auto dir = prepare_output(cfg);
    write_report(dir, emit_report(in));
    write_text_file((dir / "matrix.svg").string(), render_matrix_svg(report));
    print_quadrant_table(out, report);
    return kExitOk;
}

int cmd_calibrate(const RunConfig& cfg, std::ostream& out) {
    if (cfg.calibration_input.empty()) throw UsageError("calibrate: --calibration is required");
    if (!(cfg.cal_fraction > 0.0 && cfg.cal_fraction <= 1.0)) throw UsageError("--cal-fraction must lie in (0, 1]");
    const auto kind = calibrator_kind_from_string(cfg.kind);
    const auto test = load_input(cfg);
    const auto cal = read_predictions_file(cfg.calibration_input, parse_options(cfg));

    PredictionLog calibrated;
    nlohmann::json fitted = nlohmann::json::array();
    for (const auto& [key, series] : test.groups) {
        const auto it = cal.groups.find(key);
        if (it == cal.groups.end()) {
            throw InvalidInput("no calibration data for (" + key.dataset + ", " + std::to_string(key.fold) + ", " +
                               key.model + ")");
        }
        FoldSeries cal_series = it->second;
        if (cfg.cal_fraction < 1.0) {
            // Seeded subsample of the calibration group.
            std::vector<std::size_t> idx(cal_series.size());
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            Rng rng(substream_seed(cfg.seed, stable_hash(key.dataset + "/" + std::to_string(key.fold) + "/" + key.model)));
            for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[rng.below(i)]);
            const auto keep = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::ceil(cfg.cal_fraction * static_cast<double>(idx.size()))));
            idx.resize(keep);
            std::sort(idx.begin(), idx.end());
            std::vector<std::uint8_t> ys;
            std::vector<double> ps;
            for (auto i : idx) {
                ys.push_back(cal_series.labels()[i]);
                ps.push_back(cal_series.probs()[i]);
            }
            cal_series = FoldSeries(std::move(ys), std::move(ps));
        }
        const auto model = fit_calibrator(kind, cal_series);
        calibrated.groups.emplace(key, series.with_probs(apply_calibrator(model, series.probs())));
        calibrated.rows += series.size();
        fitted.push_back({{"dataset", key.dataset}, {"fold", key.fold}, {"model", key.model},
                          {"calibrator", to_json(model)}});
    }

    const auto opts = metric_options(cfg);
    const auto base_table = compute_metric_table(test, opts);
    const auto cal_table = compute_metric_table(calibrated, opts);
    nlohmann::json effects = nlohmann::json::object();
    out << "calibrator: " << to_string(kind) << "\n"
        << pad("model", 16) << pad("dLogLoss%", 12) << pad("impr", 8) << pad("dBrier%", 10) << pad("impr", 8)
        << pad("d|Z|%", 10) << "impr\n";
    for (const auto& m : base_table.models()) {
        const auto eff = calibration_effect(base_table, cal_table, m);
        effects[m] = to_json(eff);
        const auto& ll = eff.metrics.at(Metric::logloss);
        const auto& br = eff.metrics.at(Metric::brier);
        const auto& z = eff.metrics.at(Metric::abs_z);
        out << pad(m, 16) << pad(fixed(ll.mean_pct_delta, 1), 12) << pad(fixed(100 * ll.improved_fraction, 1), 8)
            << pad(fixed(br.mean_pct_delta, 1), 10) << pad(fixed(100 * br.improved_fraction, 1), 8)
            << pad(fixed(z.mean_pct_delta, 1), 10) << fixed(100 * z.improved_fraction, 1) << "\n";
    }

    const auto dir = prepare_output(cfg);
    std::ostringstream csv;
    write_predictions(csv, calibrated);
    write_text_file((dir / "calibrated.csv").string(), csv.str());
    write_text_file((dir / "calibrators.json").string(), dump_report(fitted));
    ReportInput in;
    in.command = cfg.command;
    in.config = echo(cfg);
    in.stats = {{"calibration_effect", effects}, {"calibrator", std::string(to_string(kind))}};
    in.warnings = test.warnings;
    write_report(dir, emit_report(in));
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
    const auto log = load_input(cfg);
    const auto table = compute_metric_table(log, metric_options(cfg));
    std::set<std::string> models(cfg.models.begin(), cfg.models.end());
    if (models.empty()) {
        const auto all = table.models();
        models.insert(all.begin(), all.end());
    }
    const auto alt = alternative_from_string(cfg.alternative);

    nlohmann::json h2h = nlohmann::json::object();
    nlohmann::json tests = nlohmann::json::array();
    for (auto metric : {Metric::logloss, Metric::brier, Metric::auc, Metric::abs_z}) {
        const auto wins = head_to_head_wins(table, models, metric);
        h2h[std::string(to_string(metric))] = to_json(wins);
        out << to_string(metric) << " wins:";
        for (const auto& [m, w] : wins.wins) out << " " << m << "=" << w;
        out << " ties=" << wins.ties << "\n";
        for (auto a = models.begin(); a != models.end(); ++a) {
            for (auto b = std::next(a); b != models.end(); ++b) {
                const auto [va, vb] = paired_values(table, *a, *b, metric);
                nlohmann::json t = {{"metric", std::string(to_string(metric))}, {"a", *a}, {"b", *b}, {"cells", va.size()}};
                try {
                    const auto r = wilcoxon_signed_rank(va, vb, alt);
                    t["result"] = to_json(r);
                    out << "  wilcoxon " << *a << " vs " << *b << ": W=" << fixed(r.w_statistic, 1)
                        << " n=" << r.n_effective << " p=" << format_double(r.p_value) << " (" << to_string(r.method)
                        << ")\n";
                } catch (const InsufficientData& e) {
                    t["result"] = nullptr;
                    t["error"] = e.what();
                }
                tests.push_back(std::move(t));
            }
        }
    }
    ReportInput in;
    in.command = cfg.command;
    in.config = echo(cfg);
    in.stats = {{"head_to_head", h2h}, {"wilcoxon", tests}, {"alternative", cfg.alternative}};
    in.warnings = log.warnings;
    write_report(prepare_output(cfg), emit_report(in));
    return kExitOk;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
    const auto log = load_input(cfg);
    const auto scheme = bin_scheme_from_string(cfg.scheme);
    std::ostringstream csv;
    csv << "dataset,fold,model,brier,reliability,resolution,uncertainty,residual,bins\n";
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& [key, series] : log.groups) {
        const auto d = brier_decomposition(series, scheme, cfg.bins);
        csv << key.dataset << ',' << key.fold << ',' << key.model << ',' << format_double(d.brier) << ','
            << format_double(d.reliability) << ',' << format_double(d.resolution) << ','
            << format_double(d.uncertainty) << ',' << format_double(d.residual) << ',' << d.bin_count << '\n';
        auto j = to_json(d);
        j["dataset"] = key.dataset;
        j["fold"] = key.fold;
        j["model"] = key.model;
        groups.push_back(std::move(j));
    }
    const auto dir = prepare_output(cfg);
    write_text_file((dir / "decomposition.csv").string(), csv.str());
    ReportInput in;
    in.command = cfg.command;
    in.config = echo(cfg);
    in.stats = {{"decomposition", groups}};
    in.warnings = log.warnings;
    write_report(dir, emit_report(in));
    out << "decompose: " << log.groups.size() << " group(s), scheme " << to_string(scheme) << ", written to "
        << (dir / "decomposition.csv").string() << "\n";
    return kExitOk;
}

}  // namespace

nlohmann::json echo(const RunConfig& c) {
    return {{"command", c.command},
            {"inputs", c.inputs},
            {"calibration", c.calibration_input},
            {"ranks", c.ranks_input},
            {"kind", c.kind},
            {"rule", c.rule},
            {"z_threshold", c.z_threshold},
            {"scheme", c.scheme},
            {"bins", c.bins},
            {"resamples", c.resamples},
            {"level", c.level},
            {"seed", c.seed},
            {"strict", !c.lenient},
            {"axis", c.axis},
            {"columns", c.columns},
            {"delimiter", c.delimiter},
            {"clip_eps", c.clip_eps},
            {"models", c.models},
            {"alternative", c.alternative},
            {"cal_fraction", c.cal_fraction},
            {"synth",
             {{"panel", c.panel},
              {"archetype", c.archetype},
              {"n", c.n},
              {"datasets", c.datasets},
              {"folds", c.folds},
              {"base_rate", c.base_rate},
              {"separation", c.separation},
              {"gamma", c.gamma},
              {"noise", c.noise},
              {"shrink", c.shrink},
              {"split", c.split}}}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Calibration/discrimination diagnostics for binary probabilistic classifiers", "probmatrix"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.set_config("--config", "", "Key-value config file (key = value per line); flags override it");

    app.add_option("-i,--input", cfg.inputs, "Prediction log(s): columns dataset, fold, model, y, p");
    app.add_option("--calibration", cfg.calibration_input, "Calibration-split prediction log (calibrate)");
    app.add_option("--ranks", cfg.ranks_input, "Expected-rank table: model, auc_rank, z_rank[, mean_abs_z] (matrix)");
    app.add_option("-o,--output", cfg.output, "Output directory");
    app.add_option("--kind", cfg.kind, "Calibrator: platt, isotonic, beta, temperature, venn-abers")
        ->check(CLI::IsMember({"platt", "isotonic", "beta", "temperature", "venn-abers"}));
    app.add_option("--rule", cfg.rule, "Quadrant rule: median or absolute")->check(CLI::IsMember({"median", "absolute"}));
    app.add_option("--z-threshold", cfg.z_threshold, "Mean |z| cut-off for the absolute rule")
        ->check(CLI::PositiveNumber);
    app.add_option("--scheme", cfg.scheme, "Decomposition grouping: unique-value, equal-width, equal-mass")
        ->check(CLI::IsMember({"unique-value", "equal-width", "equal-mass"}));
    app.add_option("--bins", cfg.bins, "Bin count for binned schemes")->check(CLI::PositiveNumber);
    app.add_option("--resamples", cfg.resamples, "Bootstrap resamples")->check(CLI::Range(1000, 100000000));
    app.add_option("--level", cfg.level, "Bootstrap interval level")->check(CLI::Range(0.5, 0.999999));
    app.add_option("--seed", cfg.seed, "Random seed")->envname(kSeedEnv);
    app.add_flag("--lenient", cfg.lenient, "Skip and count invalid rows instead of failing");
    app.add_option("--axis", cfg.axis, "Discrimination axis: auc or brier-resolution")
        ->check(CLI::IsMember({"auc", "brier-resolution"}));
    app.add_option("--columns", cfg.columns, "Column mapping, e.g. dataset=task,fold=split,p=prob");
    app.add_option("--delimiter", cfg.delimiter, "Field delimiter (default: detect; 'tab' for tabs)");
    app.add_option("--clip-eps", cfg.clip_eps, "Log-loss probability clipping");
    app.add_option("--models", cfg.models, "Models to compare (default: all)");
    app.add_option("--alternative", cfg.alternative, "Wilcoxon alternative: two-sided, greater, less")
        ->check(CLI::IsMember({"two-sided", "greater", "less"}));
    app.add_option("--cal-fraction", cfg.cal_fraction, "Fraction of each calibration group used for fitting")
        ->check(CLI::Range(1e-9, 1.0));
    app.add_option("--panel", cfg.panel, "synth panel: archetypes, wide, single")
        ->check(CLI::IsMember({"archetypes", "wide", "single"}));
    app.add_option("--archetype", cfg.archetype, "synth single-model archetype: eagle, bull, sloth, mole")
        ->check(CLI::IsMember({"eagle", "bull", "sloth", "mole"}));
    app.add_option("--n", cfg.n, "synth instances per fold");
    app.add_option("--datasets", cfg.datasets, "synth dataset count");
    app.add_option("--folds", cfg.folds, "synth folds per dataset");
    app.add_option("--base-rate", cfg.base_rate, "synth positive rate");
    app.add_option("--separation", cfg.separation, "synth latent mean gap (negative: archetype default)");
    app.add_option("--gamma", cfg.gamma, "synth distortion exponent (negative: archetype default)");
    app.add_option("--noise", cfg.noise, "synth latent noise scale");
    app.add_option("--shrink", cfg.shrink, "synth shrink toward the base rate");
    app.add_option("--split", cfg.split, "synth split: test or calibration")
        ->check(CLI::IsMember({"test", "calibration"}));

    app.add_subcommand("diagnose", "Per-model metric summaries");
    app.add_subcommand("matrix", "Expected ranks, quadrants and the matrix figure");
    app.add_subcommand("calibrate", "Fit a calibrator per group on one split and apply it to another");
    app.add_subcommand("compare", "Head-to-head wins and Wilcoxon signed-rank tests");
    app.add_subcommand("decompose", "Per-group Brier decomposition");
    app.add_subcommand("synth", "Generate a seeded synthetic cohort");

    std::vector<std::string> argv_storage{"probmatrix"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    try {
        if (cfg.command == "synth") return cmd_synth(cfg, out);
        if (cfg.command == "diagnose") return cmd_diagnose(cfg, out);
        if (cfg.command == "matrix") return cmd_matrix(cfg, out);
        if (cfg.command == "calibrate") return cmd_calibrate(cfg, out);
        if (cfg.command == "compare") return cmd_compare(cfg, out);
        if (cfg.command == "decompose") return cmd_decompose(cfg, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    err << "usage error: unknown command\n";
    return kExitUsage;
}

}  // namespace probmatrix::cli
