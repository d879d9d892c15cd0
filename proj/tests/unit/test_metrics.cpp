#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "probmatrix/error.hpp"
#include "probmatrix/metrics.hpp"

using namespace probmatrix;

namespace {
FoldSeries S(std::vector<int> y, std::vector<double> p) { return FoldSeries(std::span<const int>(y), std::span<const double>(p)); }
}  // namespace

TEST_CASE("series validation") {
    CHECK_THROWS_AS(S({}, {}), InvalidInput);
    CHECK_THROWS_AS(S({1, 0}, {0.5}), InvalidInput);
    CHECK_THROWS_AS(S({2}, {0.5}), InvalidInput);
    CHECK_THROWS_AS(S({1}, {1.5}), InvalidInput);
    CHECK_THROWS_AS(S({1}, {NAN}), InvalidInput);
    const auto s = S({1, 0, 1}, {0.1, 0.2, 0.3});
    CHECK(s.positives() == 2);
    CHECK(s.negatives() == 1);
    CHECK(s.has_both_classes());
}

TEST_CASE("brier score") {
    CHECK(brier_score(S({1, 0}, {1, 0})) == 0.0);
    CHECK(brier_score(S({1, 0}, {0.5, 0.5})) == doctest::Approx(0.25));
    CHECK(brier_score(S({1, 0, 0}, {0.8, 0.4, 0.1})) == doctest::Approx(0.07).epsilon(1e-12));
}

TEST_CASE("log loss") {
    CHECK(log_loss(S({1, 0}, {0.5, 0.5})) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(log_loss(S({1}, {1.0}), 1e-15) == doctest::Approx(-std::log1p(-1e-15)).epsilon(1e-6));
    CHECK(log_loss(S({1, 0}, {0.9, 0.2})) == doctest::Approx(0.164252).epsilon(1e-5));
    // Clipping keeps the loss finite at hard errors.
    CHECK(std::isfinite(log_loss(S({1}, {0.0}))));
    CHECK(log_loss(S({1}, {0.0}), 1e-15) == doctest::Approx(-std::log(1e-15)));
}

TEST_CASE("auc") {
    CHECK(auc_roc(S({1, 1, 0, 0}, {0.9, 0.8, 0.2, 0.1})) == 1.0);
    CHECK(auc_roc(S({1, 0}, {0.5, 0.5})) == 0.5);
    CHECK(auc_roc(S({1, 0, 1, 0}, {0.7, 0.6, 0.6, 0.2})) == doctest::Approx(0.875));
    CHECK_THROWS_AS(auc_roc(S({1, 1}, {0.2, 0.3})), UndefinedAuc);
    CHECK_FALSE(try_auc_roc(S({0, 0}, {0.2, 0.3})).has_value());
}

TEST_CASE("auc matches pair counting") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = 2 + rng.below(150);
        const auto s = oracle::random_series(rng, n, trial % 2 ? 0.05 : 0.0);
        const std::vector<double> p(s.probs().begin(), s.probs().end());
        const std::vector<std::uint8_t> y(s.labels().begin(), s.labels().end());
        CHECK(auc_roc(s) == doctest::Approx(oracle::brute_auc(p, y)).epsilon(1e-12));
    }
}

TEST_CASE("spiegelhalter z") {
    CHECK(spiegelhalter_z(S({0, 1}, {0.2, 0.8})).z == doctest::Approx(-0.70711).epsilon(1e-5));
    const auto z0 = spiegelhalter_z(S({1, 1, 1, 0, 0, 0, 0, 0, 0, 0}, std::vector<double>(10, 0.3)));
    CHECK(std::fabs(z0.z) < 1e-12);
    CHECK_FALSE(z0.significant);
    CHECK_THROWS_AS(spiegelhalter_z(S({1, 0}, {0.5, 0.5})), DegenerateVariance);
    CHECK_FALSE(try_spiegelhalter_z(S({1, 0}, {0.5, 0.5})).has_value());
    // Overconfident predictions are flagged.
    std::vector<int> y;
    std::vector<double> p;
    for (int i = 0; i < 200; ++i) {
        y.push_back(i % 2);
        p.push_back(i % 2 ? 0.55 : 0.02);
    }
    CHECK(spiegelhalter_z(S(y, p)).significant);
}

TEST_CASE("brier decomposition examples") {
    const auto base = brier_decomposition(S({1, 0, 0, 0}, {0.25, 0.25, 0.25, 0.25}));
    CHECK(base.reliability == doctest::Approx(0.0));
    CHECK(base.resolution == doctest::Approx(0.0));
    CHECK(base.uncertainty == doctest::Approx(0.1875));
    CHECK(std::fabs(base.residual) < 1e-15);

    const auto d = brier_decomposition(S({0, 1, 1, 1}, {0.2, 0.2, 0.8, 0.8}));
    CHECK(d.reliability == doctest::Approx(0.065).epsilon(1e-12));
    CHECK(d.resolution == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(d.uncertainty == doctest::Approx(0.1875).epsilon(1e-12));
    CHECK(d.brier == doctest::Approx(0.19).epsilon(1e-12));
    CHECK(std::fabs(d.residual) < 1e-12);
    CHECK(d.bin_count == 2);
}

TEST_CASE("brier decomposition identity and binned schemes") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = oracle::random_series(rng, 2 + rng.below(500), trial % 3 == 0 ? 0.1 : 0.0);
        const auto u = brier_decomposition(s);
        CHECK(std::fabs(u.brier - (u.reliability - u.resolution + u.uncertainty)) < 1e-12);
        CHECK(u.brier == doctest::Approx(brier_score(s)).epsilon(1e-12));
        CHECK(u.reliability >= 0.0);
        CHECK(u.resolution >= 0.0);
        for (auto scheme : {BinScheme::equal_width, BinScheme::equal_mass}) {
            const auto b = brier_decomposition(s, scheme, 10);
            CHECK(b.bin_count <= 10);
            CHECK(b.uncertainty == doctest::Approx(u.uncertainty));
            CHECK(b.residual == doctest::Approx(b.brier - (b.reliability - b.resolution + b.uncertainty)));
            // Equal-width bins coarsen the unique-value groups.
            if (scheme == BinScheme::equal_width) CHECK(b.resolution <= u.resolution + 1e-12);
        }
    }
}

TEST_CASE("bin scheme names") {
    CHECK(bin_scheme_from_string("equal-mass") == BinScheme::equal_mass);
    CHECK(to_string(BinScheme::unique_value) == "unique-value");
    CHECK_THROWS(bin_scheme_from_string("quantile"));
}
