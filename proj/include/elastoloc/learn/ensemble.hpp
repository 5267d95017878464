#pragma once

#include <memory>
#include <vector>

#include "elastoloc/learn/regressor.hpp"

namespace elastoloc::learn {

/// Averaging ("voting") ensemble: the unweighted mean of its members.
class EnsembleModel final : public Regressor {
public:
    /// Needs at least two members over one feature space.
    explicit EnsembleModel(std::vector<std::shared_ptr<const Regressor>> members);

    Family family() const override { return Family::ensemble; }
    std::size_t feature_count() const override { return members_.front()->feature_count(); }
    Vec3 predict_one(std::span<const double> x) const override;
    nlohmann::json to_json() const override;
    static EnsembleModel from_json(const nlohmann::json& j);

    const std::vector<std::shared_ptr<const Regressor>>& members() const { return members_; }

private:
    std::vector<std::shared_ptr<const Regressor>> members_;
};

}  // namespace elastoloc::learn
