#include "elastoloc/learn/linear.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "elastoloc/errors.hpp"

namespace elastoloc::learn {

LinearModel::LinearModel(Eigen::MatrixXd weights, Eigen::Vector3d intercept)
    : weights_(std::move(weights)), intercept_(std::move(intercept)) {
    if (weights_.cols() != 3) throw InvalidArgument("LinearModel: weights need three columns");
    if (!weights_.allFinite() || !intercept_.allFinite()) throw InvalidArgument("LinearModel: non-finite coefficients");
}

Vec3 LinearModel::predict_one(std::span<const double> x) const {
    check_width(x.size());
    Vec3 out{intercept_[0], intercept_[1], intercept_[2]};
    for (std::size_t j = 0; j < x.size(); ++j)
        for (int k = 0; k < 3; ++k) out[k] += x[j] * weights_(static_cast<Eigen::Index>(j), k);
    return out;
}

nlohmann::json LinearModel::to_json() const {
    std::vector<double> w(weights_.data(), weights_.data() + weights_.size());
    return {{"family", "linear"},
            {"features", weights_.rows()},
            {"weights_colmajor", w},
            {"intercept", {intercept_[0], intercept_[1], intercept_[2]}}};
}

LinearModel LinearModel::from_json(const nlohmann::json& j) {
    const auto d = j.at("features").get<Eigen::Index>();
    const auto w = j.at("weights_colmajor").get<std::vector<double>>();
    const auto b = j.at("intercept").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(w.size()) != 3 * d || b.size() != 3)
        throw InvalidArgument("linear model record: wrong coefficient count");
    return LinearModel(Eigen::Map<const Eigen::MatrixXd>(w.data(), d, 3), Eigen::Vector3d(b[0], b[1], b[2]));
}

LinearModel fit_linear(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.rows() == 0) throw InvalidArgument("fit_linear: X and Y need the same nonzero row count");
    if (y.cols() != 3) throw InvalidArgument("fit_linear: Y needs three columns");
    const Eigen::RowVectorXd x_mean = x.colwise().mean();
    const Eigen::RowVector3d y_mean = y.colwise().mean();
    const Eigen::MatrixXd xc = x.rowwise() - x_mean;
    const Eigen::MatrixXd yc = y.rowwise() - y_mean;

    Eigen::MatrixXd gram = xc.transpose() * xc;
    const double trace = gram.trace();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(x.cols(), 3);
    if (x.cols() > 0 && trace > 0.0) {
        gram.diagonal().array() += 1e-10 * trace / static_cast<double>(x.cols());
        w = gram.ldlt().solve(xc.transpose() * yc);
    }
    const Eigen::Vector3d b = (y_mean - x_mean * w).transpose();
    return LinearModel(std::move(w), b);
}

}  // namespace elastoloc::learn
