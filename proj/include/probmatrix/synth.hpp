#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "probmatrix/matrix.hpp"
#include "probmatrix/predictions.hpp"

namespace probmatrix {

enum class Archetype { eagle, bull, sloth, mole };

std::string_view to_string(Archetype a);
Archetype archetype_from_string(std::string_view name);
/// The quadrant an archetype is generated to land in.
Quadrant expected_quadrant(Archetype a);

/// How one synthetic model turns the shared latent signal into probabilities.
///
/// The latent score is x | y ~ N(+separation/2, 1) for positives and
/// N(-separation/2, 1) for negatives, so the exact posterior is
/// p* = sigmoid(separation * x + logit(base_rate)). The reported probability
/// is distort(posterior(x + noise * e), gamma), optionally shrunk toward the
/// base rate.
struct ModelProfile {
    std::string id;
    Archetype archetype = Archetype::eagle;
    double separation = 2.0;
    double distortion_gamma = 1.0;
    double noise = 0.0;
    double shrink = 0.0;  // 0 = none, 1 = constant base-rate predictor
};

/// Which split of a cohort to draw. Calibration and test splits share the
/// dataset structure but use disjoint random substreams.
enum class CohortSplit { test, calibration };

struct CohortSpec {
    std::size_t n = 1000;  // instances per fold
    std::size_t datasets = 30;
    std::size_t folds = 5;
    double base_rate = 0.3;
    std::uint64_t seed = 0;
    CohortSplit split = CohortSplit::test;
};

/// One-model cohort description.
struct SyntheticSpec {
    ModelProfile model;
    CohortSpec cohort;
};

/// Default profile per archetype.
ModelProfile archetype_profile(Archetype a);

/// One model per archetype, ids "eagle", "bull", "sloth", "mole".
std::vector<ModelProfile> archetype_panel();

/// 21 models spanning all four archetypes with graded separation and
/// distortion: 6 eagles, 5 bulls, 5 sloths (one of them a constant
/// base-rate predictor), 5 moles.
std::vector<ModelProfile> wide_panel();

/// Throws InvalidInput on out-of-range fields or a profile inconsistent with
/// its archetype.
void validate(const ModelProfile& profile);
void validate(const CohortSpec& cohort);

/// p^gamma / (p^gamma + (1-p)^gamma), i.e. logit p' = gamma * logit p.
/// Inputs are clamped to [1e-12, 1 - 1e-12].
double distort(double p, double gamma);

double latent_posterior(double x, double separation, double base_rate);

/// Records for every (dataset, fold, model). All models in a (dataset, fold)
/// share the same instances and labels. Bit-reproducible per seed.
std::vector<PredictionRecord> generate_cohort(const std::vector<ModelProfile>& models, const CohortSpec& cohort);
std::vector<PredictionRecord> generate_cohort(const SyntheticSpec& spec);

/// Dataset id used by the generator ("ds00", "ds01", ...).
std::string synthetic_dataset_id(std::size_t index);

}  // namespace probmatrix
