#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace probmatrix::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kSeedEnv = "PROBMATRIX_SEED";

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string calibration_input;
    std::string ranks_input;
    std::string output = ".";
    std::string kind = "venn-abers";
    std::string rule = "median";
    double z_threshold = 1.96;
    std::string scheme = "unique-value";
    std::size_t bins = 10;
    std::size_t resamples = 10000;
    double level = 0.95;
    std::uint64_t seed = 0;
    bool lenient = false;
    std::string axis = "auc";
    std::string columns;
    std::string delimiter;
    double clip_eps = 1e-15;
    std::vector<std::string> models;
    std::string alternative = "two-sided";
    double cal_fraction = 1.0;
    // synth
    std::string panel = "archetypes";
    std::string archetype = "eagle";
    std::size_t n = 1000;
    std::size_t datasets = 30;
    std::size_t folds = 5;
    double base_rate = 0.3;
    double separation = -1.0;  // < 0: archetype default
    double gamma = -1.0;       // < 0: archetype default
    double noise = 0.0;
    double shrink = 0.0;
    std::string split = "test";
};

/// Config echo written into every report. Output location is left out so
/// runs into different directories produce identical documents.
nlohmann::json echo(const RunConfig& cfg);

/// Parses and runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace probmatrix::cli
