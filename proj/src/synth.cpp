#include "probmatrix/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "probmatrix/error.hpp"
#include "probmatrix/rng.hpp"

namespace probmatrix {

std::string_view to_string(Archetype a) {
    switch (a) {
        case Archetype::eagle: return "eagle";
        case Archetype::bull: return "bull";
        case Archetype::sloth: return "sloth";
        case Archetype::mole: return "mole";
    }
    return "unknown";
}

Archetype archetype_from_string(std::string_view name) {
    for (auto a : {Archetype::eagle, Archetype::bull, Archetype::sloth, Archetype::mole}) {
        if (name == to_string(a)) return a;
    }
    throw InvalidInput("unknown archetype '" + std::string(name) + "'");
}

Quadrant expected_quadrant(Archetype a) {
    switch (a) {
        case Archetype::eagle: return Quadrant::eagle;
        case Archetype::bull: return Quadrant::bull;
        case Archetype::sloth: return Quadrant::sloth;
        case Archetype::mole: return Quadrant::mole;
    }
    return Quadrant::mole;
}

ModelProfile archetype_profile(Archetype a) {
    ModelProfile p;
    p.id = std::string(to_string(a));
    p.archetype = a;
    switch (a) {
        case Archetype::eagle: p.separation = 2.0; p.distortion_gamma = 1.0; break;
        case Archetype::bull: p.separation = 2.0; p.distortion_gamma = 2.5; break;
        case Archetype::sloth: p.separation = 0.5; p.distortion_gamma = 1.0; break;
        case Archetype::mole: p.separation = 0.5; p.distortion_gamma = 2.5; break;
    }
    return p;
}

std::vector<ModelProfile> archetype_panel() {
    return {archetype_profile(Archetype::eagle), archetype_profile(Archetype::bull),
            archetype_profile(Archetype::sloth), archetype_profile(Archetype::mole)};
}

std::vector<ModelProfile> wide_panel() {
    std::vector<ModelProfile> out;
    const auto add = [&](const char* id, Archetype a, double sep, double gamma, double shrink = 0.0) {
        out.push_back(ModelProfile{id, a, sep, gamma, 0.0, shrink});
    };
    add("eagle1", Archetype::eagle, 3.0, 1.0);
    add("eagle2", Archetype::eagle, 2.8, 1.0);
    add("eagle3", Archetype::eagle, 2.6, 1.0);
    add("eagle4", Archetype::eagle, 2.4, 1.0);
    add("eagle5", Archetype::eagle, 2.2, 1.0);
    add("eagle6", Archetype::eagle, 2.0, 1.0);
    add("bull1", Archetype::bull, 2.9, 1.8);
    add("bull2", Archetype::bull, 2.7, 2.2);
    add("bull3", Archetype::bull, 2.5, 2.6);
    add("bull4", Archetype::bull, 2.3, 3.0);
    add("bull5", Archetype::bull, 2.1, 2.0);
    add("sloth1", Archetype::sloth, 1.0, 1.0);
    add("sloth2", Archetype::sloth, 0.8, 1.0);
    add("sloth3", Archetype::sloth, 0.6, 1.0);
    add("sloth4", Archetype::sloth, 0.4, 1.0);
    add("prior", Archetype::sloth, 0.0, 1.0, 1.0);
    add("mole1", Archetype::mole, 1.1, 2.5);
    add("mole2", Archetype::mole, 0.9, 3.0);
    add("mole3", Archetype::mole, 0.7, 2.0);
    add("mole4", Archetype::mole, 0.5, 3.0);
    add("mole5", Archetype::mole, 0.3, 2.5);
    return out;
}

void validate(const ModelProfile& p) {
    if (p.id.empty()) throw InvalidInput("synthetic model id is empty");
    if (!(p.separation >= 0.0) || !std::isfinite(p.separation)) throw InvalidInput("separation must be >= 0");
    if (!(p.distortion_gamma > 0.0) || !std::isfinite(p.distortion_gamma)) {
        throw InvalidInput("distortion gamma must be > 0");
    }
    if (!(p.noise >= 0.0) || !std::isfinite(p.noise)) throw InvalidInput("noise must be >= 0");
    if (!(p.shrink >= 0.0 && p.shrink <= 1.0)) throw InvalidInput("shrink must lie in [0, 1]");
    const bool identity = p.distortion_gamma == 1.0;
    switch (p.archetype) {
        case Archetype::eagle:
            if (!identity || p.noise != 0.0 || !(p.separation > 0.0)) {
                throw InvalidInput("eagle profile needs gamma = 1, noise = 0, separation > 0");
            }
            break;
        case Archetype::bull:
            if (identity || !(p.separation > 0.0)) throw InvalidInput("bull profile needs gamma != 1, separation > 0");
            break;
        case Archetype::sloth:
            if (!identity) throw InvalidInput("sloth profile needs gamma = 1");
            break;
        case Archetype::mole:
            if (identity && p.noise == 0.0) throw InvalidInput("mole profile needs gamma != 1 or noise > 0");
            break;
    }
}

void validate(const CohortSpec& c) {
    if (c.n < 2) throw InvalidInput("cohort needs at least 2 instances per fold");
    if (c.datasets < 1 || c.folds < 1) throw InvalidInput("cohort needs at least one dataset and one fold");
    if (!(c.base_rate > 0.0 && c.base_rate < 1.0)) throw InvalidInput("base rate must lie in (0, 1)");
}

double distort(double p, double gamma) {
    if (!(gamma > 0.0)) throw InvalidInput("distortion gamma must be > 0");
    const double q = std::clamp(p, 1e-12, 1.0 - 1e-12);
    if (gamma == 1.0) return q;
    // Log-space form of q^g / (q^g + (1-q)^g) avoids underflow for large g.
    const double z = gamma * (std::log(q) - std::log1p(-q));
    return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

double latent_posterior(double x, double separation, double base_rate) {
    const double z = separation * x + std::log(base_rate) - std::log1p(-base_rate);
    return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

std::string synthetic_dataset_id(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "ds%02zu", index);
    return buf;
}

std::vector<PredictionRecord> generate_cohort(const std::vector<ModelProfile>& models, const CohortSpec& cohort) {
    validate(cohort);
    if (models.empty()) throw InvalidInput("cohort needs at least one model");
    for (std::size_t i = 0; i < models.size(); ++i) {
        validate(models[i]);
        for (std::size_t j = 0; j < i; ++j) {
            if (models[j].id == models[i].id) throw InvalidInput("duplicate synthetic model id '" + models[i].id + "'");
        }
    }

    const std::uint64_t split_tag = cohort.split == CohortSplit::test ? 0x7e57ULL : 0xca1bULL;
    std::vector<PredictionRecord> out;
    out.reserve(cohort.datasets * cohort.folds * cohort.n * models.size());
    std::vector<std::uint8_t> labels(cohort.n);
    for (std::size_t d = 0; d < cohort.datasets; ++d) {
        const std::string ds = synthetic_dataset_id(d);
        for (std::size_t f = 0; f < cohort.folds; ++f) {
            const std::uint64_t cell_seed = substream_seed(substream_seed(cohort.seed, split_tag), d * 1000003ULL + f);
            Rng label_rng(substream_seed(cell_seed, 0));
            for (auto& y : labels) y = label_rng.bernoulli(cohort.base_rate) ? 1 : 0;

            for (const auto& m : models) {
                // Per-model substream keyed by id, so adding a model to the
                // panel leaves the others' draws unchanged.
                Rng rng(substream_seed(cell_seed, stable_hash(m.id)));
                for (std::size_t i = 0; i < cohort.n; ++i) {
                    const double mean = labels[i] ? 0.5 * m.separation : -0.5 * m.separation;
                    const double x = mean + rng.normal();
                    const double e = m.noise > 0.0 ? rng.normal() : 0.0;
                    double p = distort(latent_posterior(x + m.noise * e, m.separation, cohort.base_rate),
                                       m.distortion_gamma);
                    if (m.shrink > 0.0) p = (1.0 - m.shrink) * p + m.shrink * cohort.base_rate;
                    out.push_back(PredictionRecord{ds, static_cast<int>(f), m.id, labels[i], p});
                }
            }
        }
    }
    return out;
}

std::vector<PredictionRecord> generate_cohort(const SyntheticSpec& spec) {
    return generate_cohort(std::vector<ModelProfile>{spec.model}, spec.cohort);
}

}  // namespace probmatrix
