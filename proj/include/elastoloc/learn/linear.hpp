#pragma once

#include <Eigen/Core>

#include "elastoloc/learn/regressor.hpp"

namespace elastoloc::learn {

/// y = x W + b with W of shape D x 3.
class LinearModel final : public Regressor {
public:
    LinearModel(Eigen::MatrixXd weights, Eigen::Vector3d intercept);

    Family family() const override { return Family::linear; }
    std::size_t feature_count() const override { return static_cast<std::size_t>(weights_.rows()); }
    Vec3 predict_one(std::span<const double> x) const override;
    nlohmann::json to_json() const override;
    static LinearModel from_json(const nlohmann::json& j);

    const Eigen::MatrixXd& weights() const { return weights_; }
    const Eigen::Vector3d& intercept() const { return intercept_; }

private:
    Eigen::MatrixXd weights_;
    Eigen::Vector3d intercept_;
};

/// Least squares through centred normal equations, with a Tikhonov jitter of
/// 1e-10 * trace(Xc^T Xc) / D on the diagonal so rank-deficient X still solves.
LinearModel fit_linear(const Matrix& x, const Matrix& y);

}  // namespace elastoloc::learn
