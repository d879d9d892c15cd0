#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "probmatrix/error.hpp"
#include "probmatrix/stats.hpp"

using namespace probmatrix;

TEST_CASE("wilcoxon degenerate and small cases") {
    const std::vector<double> a{1, 2, 3, 4, 5, 6};
    CHECK_THROWS_AS(wilcoxon_signed_rank(a, a), InsufficientData);

    const std::vector<double> d{1, 2, 3}, zero{0, 0, 0};
    WilcoxonOptions small;
    small.min_effective = 3;
    const auto r = wilcoxon_signed_rank(d, zero, Alternative::two_sided, small);
    CHECK(r.method == WilcoxonMethod::exact);
    CHECK(r.w_statistic == 6.0);
    CHECK(r.p_value == doctest::Approx(0.25));
    CHECK_THROWS_AS(wilcoxon_signed_rank(d, zero), InsufficientData);
}

TEST_CASE("exact wilcoxon matches sign enumeration") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = 5 + rng.below(8);
        std::vector<double> a(n), b(n, 0.0), d(n);
        for (std::size_t i = 0; i < n; ++i) {
            d[i] = (rng.uniform() + 0.01) * (rng.uniform() < 0.5 + 0.3 * std::sin(trial) ? 1 : -1);
            a[i] = d[i];
        }
        for (auto [alt, code] : {std::pair{Alternative::two_sided, 0}, {Alternative::greater, 1}, {Alternative::less, 2}}) {
            const auto r = wilcoxon_signed_rank(a, b, alt);
            CHECK(r.method == WilcoxonMethod::exact);
            CHECK(r.p_value == doctest::Approx(oracle::enumerate_wilcoxon_p(d, code)).epsilon(1e-12));
        }
    }
}

TEST_CASE("null counts sum to 2^n") {
    for (std::size_t n = 1; n <= 25; ++n) {
        const auto c = signed_rank_null_counts(n);
        CHECK(c.size() == n * (n + 1) / 2 + 1);
        CHECK(std::accumulate(c.begin(), c.end(), 0.0) == std::ldexp(1.0, static_cast<int>(n)));
    }
}

TEST_CASE("normal approximation") {
    // Ties force the approximation; a one-directional shift is decisive.
    std::vector<double> a(150), b(150);
    for (std::size_t i = 0; i < 150; ++i) {
        a[i] = 1.0 + static_cast<double>(i % 7);
        b[i] = 0.0;
    }
    const auto r = wilcoxon_signed_rank(a, b);
    CHECK(r.method == WilcoxonMethod::normal_approx);
    CHECK(r.p_value < 1e-9);
    CHECK(r.tie_count > 0);

    // Symmetric differences give a large p.
    std::vector<double> c(60), z(60, 0.0);
    for (std::size_t i = 0; i < 60; ++i) c[i] = (i % 2 ? 1.0 : -1.0) * static_cast<double>(i / 2 + 1);
    CHECK(wilcoxon_signed_rank(c, z).p_value > 0.5);
    CHECK(alternative_from_string("less") == Alternative::less);
}

TEST_CASE("bootstrap ci") {
    const auto flat = bootstrap_ci({{"m", std::vector<double>(30, 4.0)}}, 1000, 0.95, 1);
    CHECK(flat.at("m").low == 4.0);
    CHECK(flat.at("m").high == 4.0);

    Rng rng(99);
    std::vector<double> x(400);
    for (auto& v : x) v = rng.normal();
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / 400.0;
    const auto ci = bootstrap_ci({{"n", x}}, 10000, 0.95, 7).at("n");
    const double half = (ci.high - ci.low) / 2;
    CHECK(half == doctest::Approx(1.96 / 20).epsilon(0.2));
    CHECK((ci.low + ci.high) / 2 == doctest::Approx(mean).epsilon(0.05));

    // Same seed, same interval; input order does not matter.
    auto shuffled = x;
    std::reverse(shuffled.begin(), shuffled.end());
    const auto again = bootstrap_ci({{"n", shuffled}}, 10000, 0.95, 7).at("n");
    CHECK(again.low == ci.low);
    CHECK(again.high == ci.high);
    CHECK_THROWS(bootstrap_ci({{"n", x}}, 999, 0.95, 7));

    const std::vector<double> s{1, 2, 3, 4};
    CHECK(quantile_sorted(s, 0.5) == 2.5);
    CHECK(quantile_sorted(s, 0.0) == 1.0);
    CHECK(quantile_sorted(s, 1.0) == 4.0);
}

TEST_CASE("miscalibration summary") {
    const std::vector<ZResult> zeros(4);
    const auto m0 = miscalibration_rate(zeros);
    CHECK(m0.mean_abs_z == 0.0);
    CHECK(m0.median_abs_z == 0.0);
    CHECK(m0.pct_significant == 0.0);
    const std::vector<ZResult> zs{{-3.0, true}, {1.0, false}, {2.0, true}, {0.5, false}};
    const auto m = miscalibration_rate(zs);
    CHECK(m.mean_abs_z == doctest::Approx(1.625));
    CHECK(m.median_abs_z == doctest::Approx(1.5));
    CHECK(m.pct_significant == doctest::Approx(50.0));
}

namespace {
CellMetrics lcell(double ll) {
    CellMetrics m;
    m.logloss = ll;
    m.brier = ll / 2;
    m.auc = 1 - ll / 4;
    m.z = ll * 3;
    return m;
}
}  // namespace

TEST_CASE("head to head") {
    MetricTable t;
    // d1: a better on mean log-loss; d2: b better.
    t.add("a", {"d1", 0}, lcell(0.2));
    t.add("a", {"d1", 1}, lcell(0.4));
    t.add("b", {"d1", 0}, lcell(0.3));
    t.add("b", {"d1", 1}, lcell(0.35));
    t.add("a", {"d2", 0}, lcell(0.5));
    t.add("b", {"d2", 0}, lcell(0.1));
    const auto h = head_to_head_wins(t, {"a", "b"}, Metric::logloss);
    CHECK(h.wins.at("a") == 1);
    CHECK(h.wins.at("b") == 1);
    CHECK(h.datasets == 2);
    const auto single = head_to_head_wins(t, {"a"}, Metric::logloss);
    CHECK(single.wins.at("a") == 2);

    const auto [va, vb] = paired_values(t, "a", "b", Metric::logloss);
    CHECK(va.size() == 3);
    CHECK(vb.size() == 3);
}

TEST_CASE("calibration effect") {
    MetricTable base, cal;
    base.add("m", {"d", 0}, lcell(0.4));
    base.add("m", {"d", 1}, lcell(0.2));
    const auto same = calibration_effect(base, base, "m");
    for (const auto& [metric, e] : same.metrics) {
        CHECK(e.mean_pct_delta == 0.0);
        CHECK(e.improved_fraction == 0.0);
    }
    cal.add("m", {"d", 0}, lcell(0.2));
    cal.add("m", {"d", 1}, lcell(0.3));
    const auto eff = calibration_effect(base, cal, "m");
    CHECK(eff.metrics.at(Metric::logloss).mean_pct_delta == doctest::Approx((-50.0 + 50.0) / 2));
    CHECK(eff.metrics.at(Metric::logloss).improved_fraction == doctest::Approx(0.5));
    // AUC improves when it goes up.
    CHECK(eff.metrics.at(Metric::auc).improved_fraction == doctest::Approx(0.5));

    MetricTable partial;
    partial.add("m", {"d", 0}, lcell(0.2));
    CHECK_THROWS(calibration_effect(base, partial, "m"));
}

TEST_CASE("spearman") {
    CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
    CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
    CHECK(spearman({1, 2, 3}, {1, 3, 2}) == doctest::Approx(0.5));
}
