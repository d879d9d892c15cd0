#include "probmatrix/calibrators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "probmatrix/error.hpp"

namespace probmatrix {

namespace {

constexpr double kLogitClip = 1e-12;
constexpr double kBetaClip = 1e-6;
// Platt slopes are floored here so the fitted map stays strictly increasing.
constexpr double kMinPlattSlope = 1e-6;

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double logit(double p) {
    const double q = std::clamp(p, kLogitClip, 1.0 - kLogitClip);
    return std::log(q) - std::log1p(-q);
}

// Maps are applied with only exact 0 and 1 moved inward, so distinct
// inputs in the tails stay distinct.
double clip_finite(double p) {
    return std::clamp(p, std::numeric_limits<double>::denorm_min(), std::nextafter(1.0, 0.0));
}

double logit_unclipped(double p) {
    const double q = clip_finite(p);
    return std::log(q) - std::log1p(-q);
}

void require_both_classes(const FoldSeries& cal, std::string_view what) {
    if (!cal.has_both_classes()) {
        throw FitError(std::string(what) + ": calibration set holds a single class");
    }
}

// Logistic NLL over features (rows of `features`) with targets in [0, 1],
// averaged over rows. Writes the gradient and Hessian w.r.t. the linear
// coefficients when requested.
template <std::size_t K>
double logistic_nll(const std::vector<std::array<double, K>>& features, std::span<const double> targets,
                    const std::array<double, K>& coef, std::array<double, K>* grad,
                    std::array<std::array<double, K>, K>* hess) {
    double loss = 0.0;
    if (grad) grad->fill(0.0);
    if (hess) {
        for (auto& row : *hess) row.fill(0.0);
    }
    for (std::size_t i = 0; i < features.size(); ++i) {
        const auto& x = features[i];
        double z = 0.0;
        for (std::size_t k = 0; k < K; ++k) z += coef[k] * x[k];
        loss += softplus(z) - targets[i] * z;
        if (grad || hess) {
            const double q = sigmoid(z);
            const double r = q - targets[i];
            const double w = q * (1.0 - q);
            for (std::size_t k = 0; k < K; ++k) {
                if (grad) (*grad)[k] += r * x[k];
                if (hess) {
                    for (std::size_t l = 0; l < K; ++l) (*hess)[k][l] += w * x[k] * x[l];
                }
            }
        }
    }
    const double n = static_cast<double>(features.size());
    if (grad) {
        for (auto& g : *grad) g /= n;
    }
    if (hess) {
        for (auto& row : *hess) {
            for (auto& h : row) h /= n;
        }
    }
    return loss / n;
}

// Solves H d = g for symmetric positive-definite H by Cholesky. Returns false
// if H is not numerically positive definite.
template <std::size_t K>
bool cholesky_solve(std::array<std::array<double, K>, K> h, std::array<double, K> g, std::array<double, K>& out) {
    for (std::size_t j = 0; j < K; ++j) {
        double d = h[j][j];
        for (std::size_t k = 0; k < j; ++k) d -= h[j][k] * h[j][k];
        if (!(d > 1e-300)) return false;
        h[j][j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < K; ++i) {
            double s = h[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= h[i][k] * h[j][k];
            h[i][j] = s / h[j][j];
        }
    }
    for (std::size_t i = 0; i < K; ++i) {
        double s = g[i];
        for (std::size_t k = 0; k < i; ++k) s -= h[i][k] * g[k];
        g[i] = s / h[i][i];
    }
    for (std::size_t i = K; i-- > 0;) {
        double s = g[i];
        for (std::size_t k = i + 1; k < K; ++k) s -= h[k][i] * g[k];
        g[i] = s / h[i][i];
    }
    out = g;
    return true;
}

template <std::size_t K>
double norm(const std::array<double, K>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Weighted points with distinct, increasing scores.
struct Pooled {
    std::vector<double> scores;
    std::vector<double> sums;
    std::vector<double> weights;
};

Pooled pool_ties(std::span<const double> scores, std::span<const std::uint8_t> labels) {
    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    Pooled out;
    for (std::size_t i : idx) {
        if (out.scores.empty() || out.scores.back() != scores[i]) {
            out.scores.push_back(scores[i]);
            out.sums.push_back(0.0);
            out.weights.push_back(0.0);
        }
        out.sums.back() += labels[i];
        out.weights.back() += 1.0;
    }
    return out;
}

std::vector<double> pooled_fit(const Pooled& pts) {
    std::vector<double> means(pts.scores.size());
    for (std::size_t i = 0; i < means.size(); ++i) means[i] = pts.sums[i] / pts.weights[i];
    return pool_adjacent_violators(means, pts.weights);
}

// Isotonic value at score s after adding (s, label) to the pooled
// calibration points.
double augmented_fit_at(const Pooled& cal, double s, std::uint8_t label) {
    const auto it = std::lower_bound(cal.scores.begin(), cal.scores.end(), s);
    const auto pos = static_cast<std::size_t>(it - cal.scores.begin());
    const bool tie = it != cal.scores.end() && *it == s;

    std::vector<double> means;
    std::vector<double> weights;
    means.reserve(cal.scores.size() + 1);
    weights.reserve(cal.scores.size() + 1);
    for (std::size_t i = 0; i < cal.scores.size(); ++i) {
        if (i == pos && !tie) {
            means.push_back(label);
            weights.push_back(1.0);
        }
        if (i == pos && tie) {
            means.push_back((cal.sums[i] + label) / (cal.weights[i] + 1.0));
            weights.push_back(cal.weights[i] + 1.0);
        } else {
            means.push_back(cal.sums[i] / cal.weights[i]);
            weights.push_back(cal.weights[i]);
        }
    }
    if (pos == cal.scores.size()) {
        means.push_back(label);
        weights.push_back(1.0);
    }
    return pool_adjacent_violators(means, weights)[pos];
}

VennAbersOutput venn_abers_at(const Pooled& cal, double s) {
    VennAbersOutput out;
    out.p0 = augmented_fit_at(cal, s, 0);
    out.p1 = augmented_fit_at(cal, s, 1);
    out.merged = out.p1 / (1.0 - out.p0 + out.p1);
    return out;
}

std::vector<VennAbersOutput> venn_abers_pooled(const Pooled& cal, std::span<const double> test_scores,
                                               VennAbersMode mode) {
    std::vector<VennAbersOutput> out;
    out.reserve(test_scores.size());
    if (mode == VennAbersMode::naive) {
        for (double s : test_scores) out.push_back(venn_abers_at(cal, s));
        return out;
    }
    // The augmented fit only depends on where s lands among the calibration
    // scores and whether it ties one of them.
    std::map<std::pair<std::size_t, bool>, VennAbersOutput> memo;
    for (double s : test_scores) {
        const auto it = std::lower_bound(cal.scores.begin(), cal.scores.end(), s);
        const std::pair<std::size_t, bool> key{static_cast<std::size_t>(it - cal.scores.begin()),
                                               it != cal.scores.end() && *it == s};
        auto found = memo.find(key);
        if (found == memo.end()) found = memo.emplace(key, venn_abers_at(cal, s)).first;
        out.push_back(found->second);
    }
    return out;
}

}  // namespace

std::string_view to_string(CalibratorKind kind) {
    switch (kind) {
        case CalibratorKind::platt: return "platt";
        case CalibratorKind::isotonic: return "isotonic";
        case CalibratorKind::beta: return "beta";
        case CalibratorKind::temperature: return "temperature";
        case CalibratorKind::venn_abers: return "venn-abers";
    }
    return "unknown";
}

CalibratorKind calibrator_kind_from_string(std::string_view name) {
    for (auto k : {CalibratorKind::platt, CalibratorKind::isotonic, CalibratorKind::beta, CalibratorKind::temperature,
                   CalibratorKind::venn_abers}) {
        if (name == to_string(k)) return k;
    }
    throw InvalidInput("unknown calibrator kind '" + std::string(name) + "'");
}

CalibratorKind CalibratorModel::kind() const {
    return std::visit(
        [](const auto& p) -> CalibratorKind {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PlattParams>) return CalibratorKind::platt;
            else if constexpr (std::is_same_v<T, IsotonicParams>) return CalibratorKind::isotonic;
            else if constexpr (std::is_same_v<T, BetaParams>) return CalibratorKind::beta;
            else if constexpr (std::is_same_v<T, TemperatureParams>) return CalibratorKind::temperature;
            else if constexpr (std::is_same_v<T, VennAbersParams>) return CalibratorKind::venn_abers;
            else throw UsageError("calibrator model is not fitted");
        },
        params_);
}

std::vector<double> pool_adjacent_violators(std::span<const double> values, std::span<const double> weights) {
    if (!weights.empty() && weights.size() != values.size()) {
        throw InvalidInput("PAV weights and values differ in length");
    }
    struct Block {
        double sum;
        double weight;
        std::size_t count;
    };
    std::vector<Block> blocks;
    blocks.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        blocks.push_back({values[i] * w, w, 1});
        while (blocks.size() > 1) {
            const auto& last = blocks[blocks.size() - 1];
            const auto& prev = blocks[blocks.size() - 2];
            // prev.mean > last.mean, cross-multiplied (weights are positive).
            if (prev.sum * last.weight <= last.sum * prev.weight) break;
            Block merged{prev.sum + last.sum, prev.weight + last.weight, prev.count + last.count};
            blocks.pop_back();
            blocks.back() = merged;
        }
    }
    std::vector<double> fitted;
    fitted.reserve(values.size());
    for (const auto& b : blocks) fitted.insert(fitted.end(), b.count, b.sum / b.weight);
    return fitted;
}

CalibratorModel fit_platt(const FoldSeries& cal, const PlattOptions& options) {
    require_both_classes(cal, "platt");
    const auto p = cal.probs();
    const auto y = cal.labels();
    const double n_pos = static_cast<double>(cal.positives());
    const double n_neg = static_cast<double>(cal.negatives());
    const double t_pos = options.smooth_targets ? (n_pos + 1.0) / (n_pos + 2.0) : 1.0;
    const double t_neg = options.smooth_targets ? 1.0 / (n_neg + 2.0) : 0.0;

    std::vector<std::array<double, 2>> x(p.size());
    std::vector<double> t(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        x[i] = {logit(p[i]), 1.0};
        t[i] = y[i] ? t_pos : t_neg;
    }

    PlattParams out;
    std::array<double, 2> coef{1.0, 0.0};
    std::array<double, 2> grad{};
    std::array<std::array<double, 2>, 2> hess{};
    double loss = logistic_nll(x, t, coef, &grad, &hess);
    for (out.iterations = 0; out.iterations < options.max_iterations; ++out.iterations) {
        if (norm(grad) < options.gradient_tolerance) {
            out.converged = true;
            break;
        }
        hess[0][0] += 1e-12;
        hess[1][1] += 1e-12;
        std::array<double, 2> step{};
        if (!cholesky_solve(hess, grad, step)) step = grad;
        double lr = 1.0;
        bool moved = false;
        while (lr > 1e-10) {
            const std::array<double, 2> trial{coef[0] - lr * step[0], coef[1] - lr * step[1]};
            const double trial_loss = logistic_nll<2>(x, t, trial, nullptr, nullptr);
            if (trial_loss <= loss - 1e-4 * lr * (grad[0] * step[0] + grad[1] * step[1])) {
                coef = trial;
                moved = true;
                break;
            }
            lr *= 0.5;
        }
        if (!moved) {
            out.converged = norm(grad) < 1e-6;
            break;
        }
        loss = logistic_nll(x, t, coef, &grad, &hess);
    }

    if (coef[0] < kMinPlattSlope) {
        // Refit the intercept with the slope pinned at the floor.
        coef[0] = kMinPlattSlope;
        for (int it = 0; it < options.max_iterations; ++it) {
            double g = 0.0;
            double h = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double q = sigmoid(coef[0] * x[i][0] + coef[1]);
                g += q - t[i];
                h += q * (1.0 - q);
            }
            g /= static_cast<double>(x.size());
            h /= static_cast<double>(x.size());
            if (std::abs(g) < options.gradient_tolerance || !(h > 0.0)) break;
            coef[1] -= g / h;
        }
    }
    out.a = coef[0];
    out.b = coef[1];
    return CalibratorModel(out);
}

CalibratorModel fit_isotonic(const FoldSeries& cal) {
    const auto pts = pool_ties(cal.probs(), cal.labels());
    IsotonicParams out;
    out.scores = pts.scores;
    out.values = pooled_fit(pts);
    return CalibratorModel(std::move(out));
}

CalibratorModel fit_beta(const FoldSeries& cal, const BetaOptions& options) {
    require_both_classes(cal, "beta");
    const auto p = cal.probs();
    const auto y = cal.labels();
    std::vector<std::array<double, 3>> feat(p.size());
    std::vector<double> t(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double q = std::clamp(p[i], kBetaClip, 1.0 - kBetaClip);
        feat[i] = {std::log(q), -std::log1p(-q), 1.0};
        t[i] = y[i];
    }

    // theta = (alpha, beta, c) with a = exp(alpha), b = exp(beta).
    const auto to_coef = [](const std::array<double, 3>& th) {
        return std::array<double, 3>{std::exp(th[0]), std::exp(th[1]), th[2]};
    };
    // Gradient and Hessian in theta from those in (a, b, c): chain rule with
    // da/dalpha = a, d2a/dalpha2 = a.
    const auto evaluate = [&](const std::array<double, 3>& th, std::array<double, 3>& g,
                              std::array<std::array<double, 3>, 3>& h) {
        const auto coef = to_coef(th);
        std::array<double, 3> gc{};
        std::array<std::array<double, 3>, 3> hc{};
        const double loss = logistic_nll(feat, t, coef, &gc, &hc);
        const std::array<double, 3> jac{coef[0], coef[1], 1.0};
        for (std::size_t k = 0; k < 3; ++k) {
            g[k] = gc[k] * jac[k];
            for (std::size_t l = 0; l < 3; ++l) h[k][l] = hc[k][l] * jac[k] * jac[l];
        }
        h[0][0] += gc[0] * coef[0];
        h[1][1] += gc[1] * coef[1];
        return loss;
    };

    BetaParams out;
    std::array<double, 3> theta{0.0, 0.0, 0.0};
    std::array<double, 3> grad{};
    std::array<std::array<double, 3>, 3> hess{};
    double loss = evaluate(theta, grad, hess);
    for (out.iterations = 0; out.iterations < options.max_iterations; ++out.iterations) {
        if (norm(grad) < options.gradient_tolerance) {
            out.converged = true;
            break;
        }
        // Newton-preconditioned descent direction when the Hessian is
        // positive definite, plain gradient otherwise.
        std::array<double, 3> dir{};
        if (!cholesky_solve(hess, grad, dir)) dir = grad;
        double slope = grad[0] * dir[0] + grad[1] * dir[1] + grad[2] * dir[2];
        if (!(slope > 0.0)) {
            dir = grad;
            slope = norm(grad) * norm(grad);
        }
        double lr = 1.0;
        bool moved = false;
        while (lr > 1e-12) {
            const std::array<double, 3> trial{theta[0] - lr * dir[0], theta[1] - lr * dir[1], theta[2] - lr * dir[2]};
            std::array<double, 3> tg{};
            std::array<std::array<double, 3>, 3> th{};
            const double trial_loss = evaluate(trial, tg, th);
            if (std::isfinite(trial_loss) && trial_loss <= loss - 1e-4 * lr * slope) {
                theta = trial;
                loss = trial_loss;
                grad = tg;
                hess = th;
                moved = true;
                break;
            }
            lr *= 0.5;
        }
        if (!moved) break;
    }
    const auto coef = to_coef(theta);
    out.a = coef[0];
    out.b = coef[1];
    out.c = coef[2];
    return CalibratorModel(out);
}

CalibratorModel fit_temperature(const FoldSeries& cal, const TemperatureOptions& options) {
    require_both_classes(cal, "temperature");
    const auto p = cal.probs();
    const auto y = cal.labels();
    std::vector<double> z(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) z[i] = logit(p[i]);

    const auto nll = [&](double log_t) {
        const double inv_t = std::exp(-log_t);
        double acc = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const double s = z[i] * inv_t;
            acc += softplus(s) - y[i] * s;
        }
        return acc;
    };

    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = options.log_lower;
    double hi = options.log_upper;
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double f1 = nll(x1);
    double f2 = nll(x2);
    while (hi - lo > options.width_tolerance) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = nll(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = nll(x2);
        }
    }
    return CalibratorModel(TemperatureParams{std::exp(0.5 * (lo + hi))});
}

CalibratorModel fit_venn_abers(const FoldSeries& cal) {
    const auto p = cal.probs();
    const auto y = cal.labels();
    std::vector<std::size_t> idx(p.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
    VennAbersParams out;
    out.scores.reserve(idx.size());
    out.labels.reserve(idx.size());
    for (std::size_t i : idx) {
        out.scores.push_back(p[i]);
        out.labels.push_back(y[i]);
    }
    return CalibratorModel(std::move(out));
}

CalibratorModel fit_calibrator(CalibratorKind kind, const FoldSeries& cal) {
    switch (kind) {
        case CalibratorKind::platt: return fit_platt(cal);
        case CalibratorKind::isotonic: return fit_isotonic(cal);
        case CalibratorKind::beta: return fit_beta(cal);
        case CalibratorKind::temperature: return fit_temperature(cal);
        case CalibratorKind::venn_abers: return fit_venn_abers(cal);
    }
    throw UsageError("unknown calibrator kind");
}

std::vector<VennAbersOutput> venn_abers_predict(const FoldSeries& cal, std::span<const double> test_scores,
                                                VennAbersMode mode) {
    return venn_abers_pooled(pool_ties(cal.probs(), cal.labels()), test_scores, mode);
}

std::vector<VennAbersOutput> venn_abers_predict(const VennAbersParams& model, std::span<const double> test_scores,
                                                VennAbersMode mode) {
    if (model.scores.empty()) throw InvalidInput("Venn-Abers calibration set is empty");
    return venn_abers_pooled(pool_ties(model.scores, model.labels), test_scores, mode);
}

double apply_platt(const PlattParams& m, double p) {
    if (m.a == 1.0 && m.b == 0.0) return p;
    return sigmoid(m.a * logit_unclipped(p) + m.b);
}

double apply_isotonic(const IsotonicParams& m, double p) {
    if (m.scores.empty()) throw UsageError("isotonic model has no breakpoints");
    // Value of the last breakpoint at or below p; below the range clamps to
    // the first value.
    const auto it = std::upper_bound(m.scores.begin(), m.scores.end(), p);
    if (it == m.scores.begin()) return m.values.front();
    return m.values[static_cast<std::size_t>(it - m.scores.begin()) - 1];
}

double apply_beta(const BetaParams& m, double p) {
    const double q = clip_finite(p);
    return sigmoid(m.a * std::log(q) - m.b * std::log1p(-q) + m.c);
}

double apply_temperature(const TemperatureParams& m, double p) {
    if (m.temperature == 1.0) return p;
    return sigmoid(logit_unclipped(p) / m.temperature);
}

std::vector<double> apply_calibrator(const CalibratorModel& model, std::span<const double> probs) {
    if (!model.fitted()) throw UsageError("calibrator model is not fitted");
    std::vector<double> out;
    out.reserve(probs.size());
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, VennAbersParams>) {
                for (const auto& v : venn_abers_predict(m, probs, VennAbersMode::cached)) out.push_back(v.merged);
            } else if constexpr (!std::is_same_v<T, std::monostate>) {
                for (double p : probs) {
                    if constexpr (std::is_same_v<T, PlattParams>) out.push_back(apply_platt(m, p));
                    else if constexpr (std::is_same_v<T, IsotonicParams>) out.push_back(apply_isotonic(m, p));
                    else if constexpr (std::is_same_v<T, BetaParams>) out.push_back(apply_beta(m, p));
                    else out.push_back(apply_temperature(m, p));
                }
            }
        },
        model.params());
    return out;
}

nlohmann::json to_json(const CalibratorModel& model) {
    if (!model.fitted()) throw UsageError("calibrator model is not fitted");
    nlohmann::json params;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PlattParams>) {
                params = {{"A", m.a}, {"B", m.b}, {"iterations", m.iterations}, {"converged", m.converged}};
            } else if constexpr (std::is_same_v<T, IsotonicParams>) {
                params = {{"scores", m.scores}, {"values", m.values}};
            } else if constexpr (std::is_same_v<T, BetaParams>) {
                params = {{"a", m.a}, {"b", m.b}, {"c", m.c}, {"iterations", m.iterations}, {"converged", m.converged}};
            } else if constexpr (std::is_same_v<T, TemperatureParams>) {
                params = {{"T", m.temperature}};
            } else if constexpr (std::is_same_v<T, VennAbersParams>) {
                params = {{"scores", m.scores}, {"labels", m.labels}};
            }
        },
        model.params());
    return {{"kind", std::string(to_string(model.kind()))}, {"params", params}};
}

CalibratorModel calibrator_from_json(const nlohmann::json& doc) {
    try {
        const auto kind = calibrator_kind_from_string(doc.at("kind").get<std::string>());
        const auto& p = doc.at("params");
        switch (kind) {
            case CalibratorKind::platt: {
                PlattParams m;
                m.a = p.at("A").get<double>();
                m.b = p.at("B").get<double>();
                m.iterations = p.value("iterations", 0);
                m.converged = p.value("converged", true);
                if (!(m.a > 0.0)) throw InvalidInput("platt slope A must be positive");
                return CalibratorModel(m);
            }
            case CalibratorKind::isotonic: {
                IsotonicParams m;
                m.scores = p.at("scores").get<std::vector<double>>();
                m.values = p.at("values").get<std::vector<double>>();
                if (m.scores.size() != m.values.size() || m.scores.empty()) {
                    throw InvalidInput("isotonic breakpoints malformed");
                }
                if (!std::is_sorted(m.scores.begin(), m.scores.end()) ||
                    !std::is_sorted(m.values.begin(), m.values.end())) {
                    throw InvalidInput("isotonic breakpoints must be non-decreasing");
                }
                return CalibratorModel(std::move(m));
            }
            case CalibratorKind::beta: {
                BetaParams m;
                m.a = p.at("a").get<double>();
                m.b = p.at("b").get<double>();
                m.c = p.at("c").get<double>();
                m.iterations = p.value("iterations", 0);
                m.converged = p.value("converged", true);
                if (m.a < 0.0 || m.b < 0.0) throw InvalidInput("beta coefficients a, b must be non-negative");
                return CalibratorModel(m);
            }
            case CalibratorKind::temperature: {
                const double t = p.at("T").get<double>();
                if (!(t > 0.0)) throw InvalidInput("temperature must be positive");
                return CalibratorModel(TemperatureParams{t});
            }
            case CalibratorKind::venn_abers: {
                VennAbersParams m;
                m.scores = p.at("scores").get<std::vector<double>>();
                m.labels = p.at("labels").get<std::vector<std::uint8_t>>();
                if (m.scores.size() != m.labels.size() || m.scores.empty()) {
                    throw InvalidInput("venn-abers calibration pairs malformed");
                }
                return CalibratorModel(std::move(m));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("calibrator JSON: ") + e.what());
    }
    throw InvalidInput("calibrator JSON: unknown kind");
}

}  // namespace probmatrix
