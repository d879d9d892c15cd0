#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "probmatrix/calibrators.hpp"
#include "probmatrix/cli.hpp"
#include "probmatrix/error.hpp"
#include "probmatrix/matrix.hpp"
#include "probmatrix/metrics.hpp"
#include "probmatrix/report_io.hpp"
#include "probmatrix/stats.hpp"
#include "probmatrix/synth.hpp"

namespace py = pybind11;
using namespace probmatrix;

namespace {

FoldSeries series(const std::vector<int>& y, const std::vector<double>& p) {
    return FoldSeries(std::span<const int>(y), std::span<const double>(p));
}

// Structured results cross the boundary as JSON text; the Python package
// decodes them.
std::string dumps(const nlohmann::json& j) { return j.dump(); }

QuadrantReport quadrants(const std::map<std::string, double>& disc, const std::map<std::string, double>& calib,
                         const std::string& rule, double z_threshold) {
    if (rule == "median") return assign_quadrants_median(disc, calib);
    if (rule == "absolute") return assign_quadrants_absolute(disc, calib, z_threshold);
    throw UsageError("rule must be 'median' or 'absolute'");
}

}  // namespace

PYBIND11_MODULE(_probmatrix, m) {
    m.doc() = "Calibration and discrimination diagnostics for binary classifiers";

    // Later registrations are tried first, so the base class goes first.
    py::register_exception<Error>(m, "ProbmatrixError", PyExc_RuntimeError);
    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

    m.def("brier_score", [](const std::vector<int>& y, const std::vector<double>& p) { return brier_score(series(y, p)); },
          py::arg("y"), py::arg("p"));
    m.def(
        "log_loss",
        [](const std::vector<int>& y, const std::vector<double>& p, double eps) { return log_loss(series(y, p), eps); },
        py::arg("y"), py::arg("p"), py::arg("clip_eps") = kDefaultClipEps);
    m.def(
        "auc_roc",
        [](const std::vector<int>& y, const std::vector<double>& p) -> std::optional<double> {
            return try_auc_roc(series(y, p));
        },
        py::arg("y"), py::arg("p"));
    m.def(
        "spiegelhalter_z",
        [](const std::vector<int>& y, const std::vector<double>& p) -> std::optional<std::pair<double, bool>> {
            const auto z = try_spiegelhalter_z(series(y, p));
            if (!z) return std::nullopt;
            return std::pair{z->z, z->significant};
        },
        py::arg("y"), py::arg("p"));
    m.def(
        "brier_decomposition",
        [](const std::vector<int>& y, const std::vector<double>& p, const std::string& scheme, std::size_t bins) {
            return dumps(to_json(brier_decomposition(series(y, p), bin_scheme_from_string(scheme), bins)));
        },
        py::arg("y"), py::arg("p"), py::arg("scheme") = "unique-value", py::arg("bins") = 10);

    m.def(
        "pool_adjacent_violators",
        [](const std::vector<double>& v, const std::vector<double>& w) { return pool_adjacent_violators(v, w); },
        py::arg("values"), py::arg("weights") = std::vector<double>{});
    m.def(
        "fit_calibrator",
        [](const std::string& kind, const std::vector<int>& y, const std::vector<double>& p) {
            return dumps(to_json(fit_calibrator(calibrator_kind_from_string(kind), series(y, p))));
        },
        py::arg("kind"), py::arg("y"), py::arg("p"));
    m.def(
        "apply_calibrator",
        [](const std::string& model, const std::vector<double>& p) {
            return apply_calibrator(calibrator_from_json(nlohmann::json::parse(model)), p);
        },
        py::arg("model"), py::arg("p"));
    m.def(
        "venn_abers_predict",
        [](const std::vector<int>& y, const std::vector<double>& p, const std::vector<double>& scores) {
            std::vector<std::tuple<double, double, double>> out;
            for (const auto& o : venn_abers_predict(series(y, p), scores, VennAbersMode::cached)) {
                out.emplace_back(o.p0, o.p1, o.merged);
            }
            return out;
        },
        py::arg("y"), py::arg("p"), py::arg("scores"));

    m.def(
        "wilcoxon_signed_rank",
        [](const std::vector<double>& a, const std::vector<double>& b, const std::string& alternative) {
            return dumps(to_json(wilcoxon_signed_rank(a, b, alternative_from_string(alternative))));
        },
        py::arg("a"), py::arg("b"), py::arg("alternative") = "two-sided");
    m.def(
        "bootstrap_ci",
        [](const std::map<std::string, std::vector<double>>& values, std::size_t resamples, double level,
           std::uint64_t seed) {
            std::map<std::string, std::pair<double, double>> out;
            for (const auto& [k, v] : bootstrap_ci(values, resamples, level, seed)) out[k] = {v.low, v.high};
            return out;
        },
        py::arg("values"), py::arg("resamples") = 10000, py::arg("level") = 0.95, py::arg("seed") = 0);

    m.def(
        "assign_quadrants",
        [](const std::map<std::string, double>& disc, const std::map<std::string, double>& calib,
           const std::string& rule, double z_threshold) {
            return dumps(to_json(quadrants(disc, calib, rule, z_threshold)));
        },
        py::arg("discrimination_ranks"), py::arg("calibration"), py::arg("rule") = "median",
        py::arg("z_threshold") = kZCritical);
    m.def(
        "render_matrix_svg",
        [](const std::map<std::string, double>& disc, const std::map<std::string, double>& calib,
           const std::string& rule, double z_threshold) {
            auto r = quadrants(disc, calib, rule, z_threshold);
            if (rule == "absolute") {
                for (auto& e : r.entries) e.mean_abs_z = calib.at(e.model);
            }
            return render_matrix_svg(r);
        },
        py::arg("discrimination_ranks"), py::arg("calibration"), py::arg("rule") = "median",
        py::arg("z_threshold") = kZCritical);

    m.def(
        "synth_csv",
        [](const std::string& panel, std::size_t n, std::size_t datasets, std::size_t folds, double base_rate,
           std::uint64_t seed, const std::string& split) {
            CohortSpec c;
            c.n = n;
            c.datasets = datasets;
            c.folds = folds;
            c.base_rate = base_rate;
            c.seed = seed;
            c.split = split == "calibration" ? CohortSplit::calibration : CohortSplit::test;
            const auto models = panel == "wide" ? wide_panel() : archetype_panel();
            std::ostringstream out;
            write_records(out, generate_cohort(models, c));
            return out.str();
        },
        py::arg("panel") = "archetypes", py::arg("n") = 1000, py::arg("datasets") = 30, py::arg("folds") = 5,
        py::arg("base_rate") = 0.3, py::arg("seed") = 0, py::arg("split") = "test");
    m.def("distort", &distort, py::arg("p"), py::arg("gamma"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int rc = cli::run(args, out, err);
            return std::tuple{rc, out.str(), err.str()};
        },
        py::arg("args"));

    m.attr("__version__") = kToolVersion;
}
