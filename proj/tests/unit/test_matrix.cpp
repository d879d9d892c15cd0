#include <doctest.h>

#include <fstream>
#include <map>
#include <string>

#include "probmatrix/error.hpp"
#include "probmatrix/matrix.hpp"
#include "probmatrix/report_io.hpp"
#include "probmatrix/synth.hpp"

using namespace probmatrix;

namespace {

CellMetrics cell(double auc, double z, double logloss = 0.5) {
    CellMetrics m;
    m.auc = auc;
    m.z = z;
    m.logloss = logloss;
    m.brier = logloss / 3;
    m.resolution = auc / 10;
    return m;
}

}  // namespace

TEST_CASE("fractional ranks") {
    CHECK(fractional_ranks({1.0, 3.0, 3.0}, Direction::lower_better) == std::vector<double>{1, 2.5, 2.5});
    CHECK(fractional_ranks({0.9, 0.7, 0.8}, Direction::higher_better) == std::vector<double>{1, 3, 2});
    CHECK(fractional_ranks({2, 2, 2, 2}, Direction::lower_better) == std::vector<double>{2.5, 2.5, 2.5, 2.5});
}

TEST_CASE("expected ranks by hand") {
    MetricTable t;
    // Cell A: auc a=0.9 b=0.8 c=0.7; |z| a=3 b=1 c=1
    // Cell B: auc a=0.6 b=0.8 c=0.8; |z| a=0.5 b=-2 c=4
    t.add("a", {"d1", 0}, cell(0.9, 3.0));
    t.add("b", {"d1", 0}, cell(0.8, 1.0));
    t.add("c", {"d1", 0}, cell(0.7, -1.0));
    t.add("a", {"d1", 1}, cell(0.6, 0.5));
    t.add("b", {"d1", 1}, cell(0.8, -2.0));
    t.add("c", {"d1", 1}, cell(0.8, 4.0));
    const auto auc = expected_ranks(t, Metric::auc).expected();
    CHECK(auc.at("a") == doctest::Approx((1 + 3) / 2.0));
    CHECK(auc.at("b") == doctest::Approx((2 + 1.5) / 2.0));
    CHECK(auc.at("c") == doctest::Approx((3 + 1.5) / 2.0));
    const auto z = expected_ranks(t, Metric::abs_z).expected();
    CHECK(z.at("a") == doctest::Approx((3 + 1) / 2.0));
    CHECK(z.at("b") == doctest::Approx((1.5 + 2) / 2.0));
    CHECK(z.at("c") == doctest::Approx((1.5 + 3) / 2.0));
}

TEST_CASE("expected ranks skip undefined cells") {
    MetricTable t;
    t.add("a", {"d1", 0}, cell(0.9, 1.0));
    t.add("b", {"d1", 0}, cell(0.8, 2.0));
    auto missing = cell(0.5, 0.0);
    missing.auc.reset();
    t.add("a", {"d2", 0}, missing);
    t.add("b", {"d2", 0}, cell(0.7, 1.0));
    const auto r = expected_ranks(t, Metric::auc);
    CHECK(r.models.at("a").cells_used == 1);
    CHECK(r.models.at("a").cells_excluded == 1);
    CHECK(r.models.at("b").cells_used == 2);
    CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("median split quadrants") {
    CHECK(quadrant_for(7.93 <= 10.98, 4.36 <= 10.44) == Quadrant::eagle);
    CHECK(quadrant_for(16.65 <= 10.98, 9.07 <= 10.44) == Quadrant::bull);
    CHECK(prescription_for(Quadrant::eagle) == Prescription::ship_it);
    CHECK(prescription_for(Quadrant::bull) == Prescription::apply_venn_abers);
    CHECK(prescription_for(Quadrant::sloth) == Prescription::retrain);
    CHECK(prescription_for(Quadrant::mole) == Prescription::start_over);
    CHECK(type_label(Quadrant::mole) == "Type IV");
    CHECK(quadrant_from_string("Sloth") == Quadrant::sloth);

    const auto same = assign_quadrants_median({{"x", 3.0}, {"y", 3.0}}, {{"x", 2.0}, {"y", 2.0}});
    for (const auto& e : same.entries) CHECK(e.quadrant == Quadrant::eagle);

    CHECK(median({3, 1, 2}) == 2);
    CHECK(median({4, 1, 2, 3}) == 2.5);
    CHECK_THROWS_AS(median({}), InvalidInput);
}

TEST_CASE("reference rank fixture") {
    std::ifstream f(PROBMATRIX_FIXTURE_DIR "/reference_ranks.csv");
    REQUIRE(f);
    const auto rows = parse_rank_table(f);
    REQUIRE(rows.size() == 21);
    std::map<std::string, double> disc, z, maz;
    for (const auto& r : rows) {
        disc[r.model] = r.auc_rank;
        z[r.model] = r.z_rank;
        maz[r.model] = *r.mean_abs_z;
    }
    const auto med = assign_quadrants_median(disc, z);
    CHECK(med.discrimination_threshold == doctest::Approx(10.44));
    CHECK(med.calibration_threshold == doctest::Approx(10.98));
    CHECK(med.find("CatBoost")->quadrant == Quadrant::eagle);
    CHECK(med.find("XGBoost")->quadrant == Quadrant::bull);
    CHECK(med.find("AVG")->quadrant == Quadrant::sloth);
    CHECK(med.find("KNN")->quadrant == Quadrant::mole);

    const auto abs = assign_quadrants_absolute(disc, maz);
    CHECK(abs.find("CatBoost")->quadrant == Quadrant::eagle);
    CHECK(abs.find("RF")->quadrant == Quadrant::bull);

    auto edge = maz;
    edge["RF"] = 1.96;
    CHECK(assign_quadrants_absolute(disc, edge).find("RF")->quadrant == Quadrant::eagle);
}

TEST_CASE("stability") {
    SUBCASE("one dataset") {
        MetricTable t;
        t.add("a", {"d1", 0}, cell(0.9, 0.5));
        t.add("b", {"d1", 0}, cell(0.6, 3.0));
        t.add("a", {"d1", 1}, cell(0.8, 0.7));
        t.add("b", {"d1", 1}, cell(0.7, 2.0));
        const auto s = per_dataset_stability(t);
        CHECK(s.datasets == 1);
        for (const auto& e : s.entries) CHECK(e.modal_rate == 1.0);
        CHECK(s.find("a")->modal == Quadrant::eagle);
        CHECK(s.find("b")->modal == Quadrant::mole);
    }
    SUBCASE("archetype cohort") {
        CohortSpec c;
        c.n = 1000;
        c.datasets = 20;
        c.folds = 5;
        c.seed = 4;
        auto models = archetype_panel();
        const auto table = compute_metric_table(group_records(generate_cohort(models, c)));
        const auto s = per_dataset_stability(table);
        for (const auto& m : models) {
            const auto* e = s.find(m.id);
            REQUIRE(e);
            CHECK(e->fraction(expected_quadrant(m.archetype)) >= 0.9);
        }
    }
}

TEST_CASE("metric table needs matching labels") {
    std::vector<PredictionRecord> recs{{"d", 0, "a", 1, 0.6}, {"d", 0, "a", 0, 0.3},
                                       {"d", 0, "b", 0, 0.6}, {"d", 0, "b", 1, 0.3}};
    CHECK_THROWS_AS(compute_metric_table(group_records(recs)), InvalidInput);
}

TEST_CASE("metric names") {
    CHECK(metric_from_string("brier-resolution") == Metric::resolution);
    CHECK(metric_from_string("log-loss") == Metric::logloss);
    CHECK(default_direction(Metric::auc) == Direction::higher_better);
    CHECK(default_direction(Metric::abs_z) == Direction::lower_better);
}
