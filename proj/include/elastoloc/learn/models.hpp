#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "elastoloc/learn/ensemble.hpp"
#include "elastoloc/learn/forest.hpp"
#include "elastoloc/learn/gbt.hpp"
#include "elastoloc/learn/knn.hpp"
#include "elastoloc/learn/linear.hpp"
#include "elastoloc/learn/preprocess.hpp"
#include "elastoloc/learn/tree.hpp"

namespace elastoloc::learn {

/// A hyperparameter value as it appears in configs and grids.
using ParamValue = std::variant<double, std::string>;

/// Number if the text parses completely as one, otherwise the text itself.
ParamValue parse_param_value(const std::string& text);
std::string to_string(const ParamValue& value);

/// Family plus every hyperparameter needed to fit it.
struct ModelSpec {
    Family family = Family::ensemble;
    TreeParams tree{25, 1};
    ForestParams forest{};
    GbtParams gbt{};
    KnnParams knn{};
    std::vector<Family> ensemble_members{Family::forest, Family::knn};
    /// Forest bootstrap seed; overrides forest.seed.
    std::uint64_t seed = 0;

    /// Sets a named hyperparameter: n_estimators, max_depth, min_samples_leaf,
    /// learning_rate, n_neighbors, weights, features_per_split, bootstrap,
    /// seed. A "family." prefix (e.g. "knn.n_neighbors") targets one family;
    /// unprefixed names go to this spec's family, or for an ensemble to every
    /// member family that has the parameter. Throws ConfigError otherwise.
    void set(const std::string& name, const ParamValue& value);

    nlohmann::json to_json() const;
    static ModelSpec from_json(const nlohmann::json& j);
};

/// Fits the spec's family on already-scaled features.
std::unique_ptr<Regressor> fit_model(const ModelSpec& spec, const Matrix& x, const Matrix& y, unsigned workers = 1);

/// Scaler fitted on the training rows followed by a model on scaled features.
class Pipeline {
public:
    Pipeline(ModelSpec spec, StandardScaler scaler, std::shared_ptr<const Regressor> model,
             nlohmann::json meta = nlohmann::json::object());

    static Pipeline fit(const ModelSpec& spec, const Matrix& x_raw, const Matrix& y, unsigned workers = 1);

    Matrix predict(const Matrix& x_raw) const;
    Vec3 predict_one(std::span<const double> x_raw) const;

    const ModelSpec& spec() const { return spec_; }
    const StandardScaler& scaler() const { return scaler_; }
    const Regressor& model() const { return *model_; }
    const std::shared_ptr<const Regressor>& model_ptr() const { return model_; }
    /// Free-form provenance (dataset, split) stored alongside the model.
    nlohmann::json& meta() { return meta_; }
    const nlohmann::json& meta() const { return meta_; }

    /// Single JSON document: {"format": "elastoloc-model", "version": 1,
    /// "spec", "scaler", "model", "meta"}. Doubles round-trip exactly, so a
    /// loaded pipeline predicts bit-for-bit what the saved one did.
    nlohmann::json to_json() const;
    static Pipeline from_json(const nlohmann::json& j);
    void save(const std::filesystem::path& path) const;
    static Pipeline load(const std::filesystem::path& path);

private:
    ModelSpec spec_;
    StandardScaler scaler_;
    std::shared_ptr<const Regressor> model_;
    nlohmann::json meta_;
};

}  // namespace elastoloc::learn
