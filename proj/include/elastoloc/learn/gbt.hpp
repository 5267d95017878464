#pragma once

#include <array>
#include <vector>

#include "elastoloc/learn/tree.hpp"

namespace elastoloc::learn {

struct GbtParams {
    std::size_t n_estimators = 200;
    int max_depth = 4;
    double learning_rate = 0.1;
    std::size_t min_samples_leaf = 1;
};

/// Squared-loss gradient boosting, one independent sequence of
/// single-output trees per coordinate.
class GbtModel final : public Regressor {
public:
    GbtModel(Vec3 initial, std::array<std::vector<RegressionTree>, 3> stages, double learning_rate);

    Family family() const override { return Family::gbt; }
    std::size_t feature_count() const override { return features_; }
    Vec3 predict_one(std::span<const double> x) const override;
    /// Prediction using only the first `rounds` trees of each coordinate.
    Vec3 predict_one(std::span<const double> x, std::size_t rounds) const;
    Matrix predict(const Matrix& x, std::size_t rounds) const;
    using Regressor::predict;
    nlohmann::json to_json() const override;
    static GbtModel from_json(const nlohmann::json& j);

    std::size_t rounds() const { return stages_[0].size(); }
    const Vec3& initial() const { return initial_; }
    double learning_rate() const { return learning_rate_; }

private:
    Vec3 initial_;
    std::array<std::vector<RegressionTree>, 3> stages_;
    double learning_rate_;
    std::size_t features_ = 0;
};

GbtModel fit_gbt(const Matrix& x, const Matrix& y, const GbtParams& params);

}  // namespace elastoloc::learn
