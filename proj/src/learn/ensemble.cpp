#include "elastoloc/learn/ensemble.hpp"

#include "elastoloc/errors.hpp"

namespace elastoloc::learn {

EnsembleModel::EnsembleModel(std::vector<std::shared_ptr<const Regressor>> members) : members_(std::move(members)) {
    if (members_.size() < 2) throw InvalidArgument("EnsembleModel: needs at least two members");
    for (const auto& m : members_) {
        if (!m) throw InvalidArgument("EnsembleModel: null member");
        if (m->feature_count() != members_.front()->feature_count())
            throw InvalidArgument("EnsembleModel: members were fitted on different feature spaces");
    }
}

Vec3 EnsembleModel::predict_one(std::span<const double> x) const {
    check_width(x.size());
    Vec3 sum{0.0, 0.0, 0.0};
    for (const auto& m : members_) {
        const Vec3 p = m->predict_one(x);
        for (int k = 0; k < 3; ++k) sum[k] += p[k];
    }
    const auto n = static_cast<double>(members_.size());
    return {sum[0] / n, sum[1] / n, sum[2] / n};
}

nlohmann::json EnsembleModel::to_json() const {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : members_) members.push_back(m->to_json());
    return {{"family", "ensemble"}, {"members", std::move(members)}};
}

EnsembleModel EnsembleModel::from_json(const nlohmann::json& j) {
    std::vector<std::shared_ptr<const Regressor>> members;
    for (const auto& m : j.at("members")) members.push_back(regressor_from_json(m));
    return EnsembleModel(std::move(members));
}

}  // namespace elastoloc::learn
