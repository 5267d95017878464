#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "elastoloc/datagen.hpp"
#include "elastoloc/learn/models.hpp"
#include "elastoloc/tune.hpp"

namespace elastoloc::experiment {

/// Everything a subcommand needs. Built from a JSON document (see README for
/// the schema) whose keys are validated up front.
struct RunConfig {
    std::string recipe = "single";
    std::filesystem::path output_dir = "out";
    std::uint64_t seed = 7;
    std::size_t n_samples = 500;
    /// Empty lists fall back to the recipe's defaults.
    std::vector<double> eps;
    std::vector<Divisions> meshes;
    std::vector<SensorKind> sensors;
    int degree = 1;
    Material material{};
    double amplitude = 1.0;
    double rel_tol = 1e-10;
    unsigned workers = 1;
    learn::SplitSpec split{0.7, 0};
    std::vector<learn::Family> models;
    learn::ModelSpec base_spec = default_spec();
    std::optional<tune::ParamGrid> grid;
    std::size_t folds = 5;
    std::uint64_t tune_seed = 0;
    std::vector<std::filesystem::path> data;
    std::vector<std::filesystem::path> model_files;
    std::vector<std::filesystem::path> reports;
    learn::Family family = learn::Family::ensemble;
    bool paper_scale = false;

    static learn::ModelSpec default_spec();
};

/// Throws ConfigError on unknown keys or bad values.
RunConfig parse_config(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const RunConfig& config);

inline constexpr const char* kRecipes[] = {"single", "per-eps", "universal", "universal-mic", "universal-acc",
                                           "ablation"};

/// One physical configuration of a generation recipe.
struct GenerationJob {
    DatasetConfig config;  ///< layout unused; see `sensors`
    std::vector<SensorKind> sensors;
};

/// Expands a recipe (plus list overrides) into per-configuration jobs. Each
/// job's seed is derived from the run seed and its provenance, so the same
/// configuration draws the same sources in every recipe.
std::vector<GenerationJob> plan_generation(const RunConfig& config);

/// Nested ablation order over the five microphone sites: the central site
/// first, then the diagonal pairs.
inline constexpr std::size_t kAblationOrder[] = {2, 0, 4, 1, 3};

struct RunOutcome {
    std::vector<std::filesystem::path> outputs;
    std::filesystem::path manifest;
};

RunOutcome cmd_generate(const RunConfig& config);
RunOutcome cmd_train(const RunConfig& config);
RunOutcome cmd_tune(const RunConfig& config);
RunOutcome cmd_evaluate(const RunConfig& config);
RunOutcome cmd_ablate_sensors(const RunConfig& config);
RunOutcome cmd_report(const RunConfig& config);

}  // namespace elastoloc::experiment
