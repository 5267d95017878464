#pragma once

#include <cstdint>
#include <vector>

#include "elastoloc/learn/tree.hpp"

namespace elastoloc::learn {

struct ForestParams {
    std::size_t n_estimators = 100;
    TreeParams tree{25, 1};
    /// 0 means max(1, floor(D / 3)).
    std::size_t features_per_split = 0;
    /// Disabling the bootstrap trains every tree on the full data set.
    bool bootstrap = true;
    std::uint64_t seed = 0;
};

/// Bagged CART trees; the prediction is the unweighted mean of the trees.
class Forest final : public Regressor {
public:
    explicit Forest(std::vector<RegressionTree> trees);

    Family family() const override { return Family::forest; }
    std::size_t feature_count() const override { return trees_.front().feature_count(); }
    Vec3 predict_one(std::span<const double> x) const override;
    nlohmann::json to_json() const override;
    static Forest from_json(const nlohmann::json& j);

    const std::vector<RegressionTree>& trees() const { return trees_; }

private:
    std::vector<RegressionTree> trees_;
};

/// Tree t draws its bootstrap and feature subsets from derive_seed(seed, t), so
/// the result does not depend on `workers`.
Forest fit_forest(const Matrix& x, const Matrix& y, const ForestParams& params, unsigned workers = 1);

}  // namespace elastoloc::learn
