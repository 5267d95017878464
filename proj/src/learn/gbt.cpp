#include "elastoloc/learn/gbt.hpp"

#include "elastoloc/errors.hpp"

namespace elastoloc::learn {

GbtModel::GbtModel(Vec3 initial, std::array<std::vector<RegressionTree>, 3> stages, double learning_rate)
    : initial_(initial), stages_(std::move(stages)), learning_rate_(learning_rate) {
    if (!(learning_rate_ > 0.0 && learning_rate_ <= 1.0)) throw InvalidArgument("GbtModel: learning_rate must lie in (0, 1]");
    if (stages_[0].size() != stages_[1].size() || stages_[0].size() != stages_[2].size())
        throw InvalidArgument("GbtModel: coordinates have different round counts");
    if (stages_[0].empty()) throw InvalidArgument("GbtModel: needs at least one boosting round");
    features_ = stages_[0].front().feature_count();
    for (const auto& seq : stages_)
        for (const auto& t : seq)
            if (t.output_count() != 1 || t.feature_count() != features_)
                throw InvalidArgument("GbtModel: stage trees must be single-output over one feature space");
}

Vec3 GbtModel::predict_one(std::span<const double> x) const { return predict_one(x, rounds()); }

Vec3 GbtModel::predict_one(std::span<const double> x, std::size_t rounds) const {
    check_width(x.size());
    rounds = std::min(rounds, this->rounds());
    Vec3 out = initial_;
    for (int k = 0; k < 3; ++k)
        for (std::size_t m = 0; m < rounds; ++m) out[k] += learning_rate_ * stages_[k][m].leaf_value(x)[0];
    return out;
}

Matrix GbtModel::predict(const Matrix& x, std::size_t rounds) const {
    check_width(static_cast<std::size_t>(x.cols()));
    Matrix out(x.rows(), 3);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const Vec3 p = predict_one({x.row(i).data(), static_cast<std::size_t>(x.cols())}, rounds);
        for (int k = 0; k < 3; ++k) out(i, k) = p[k];
    }
    return out;
}

nlohmann::json GbtModel::to_json() const {
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& seq : stages_) {
        nlohmann::json trees = nlohmann::json::array();
        for (const auto& t : seq) trees.push_back(t.to_json());
        stages.push_back(std::move(trees));
    }
    return {{"family", "gbt"},
            {"initial", {initial_[0], initial_[1], initial_[2]}},
            {"learning_rate", learning_rate_},
            {"stages", std::move(stages)}};
}

GbtModel GbtModel::from_json(const nlohmann::json& j) {
    const auto init = j.at("initial").get<std::vector<double>>();
    if (init.size() != 3 || j.at("stages").size() != 3) throw InvalidArgument("gbt record: expected three coordinates");
    std::array<std::vector<RegressionTree>, 3> stages;
    for (int k = 0; k < 3; ++k)
        for (const auto& t : j.at("stages")[static_cast<std::size_t>(k)]) stages[k].push_back(RegressionTree::from_json(t));
    return GbtModel({init[0], init[1], init[2]}, std::move(stages), j.at("learning_rate").get<double>());
}

GbtModel fit_gbt(const Matrix& x, const Matrix& y, const GbtParams& params) {
    if (params.n_estimators < 1) throw InvalidArgument("fit_gbt: n_estimators must be >= 1");
    if (!(params.learning_rate > 0.0 && params.learning_rate <= 1.0))
        throw InvalidArgument("fit_gbt: learning_rate must lie in (0, 1]");
    if (x.rows() != y.rows() || x.rows() == 0) throw InvalidArgument("fit_gbt: bad training data");
    if (y.cols() != 3) throw InvalidArgument("fit_gbt: Y needs three columns");

    const TreeParams tree{params.max_depth, params.min_samples_leaf};
    const Eigen::Index n = x.rows();
    Vec3 initial{};
    std::array<std::vector<RegressionTree>, 3> stages;
    Matrix residual(n, 1);
    for (int k = 0; k < 3; ++k) {
        initial[k] = y.col(k).mean();
        Eigen::VectorXd current = Eigen::VectorXd::Constant(n, initial[k]);
        stages[k].reserve(params.n_estimators);
        for (std::size_t m = 0; m < params.n_estimators; ++m) {
            residual.col(0) = y.col(k) - current;
            RegressionTree t = fit_tree(x, residual, tree);
            for (Eigen::Index i = 0; i < n; ++i)
                current[i] += params.learning_rate * t.leaf_value({x.row(i).data(), static_cast<std::size_t>(x.cols())})[0];
            stages[k].push_back(std::move(t));
        }
    }
    return GbtModel(initial, std::move(stages), params.learning_rate);
}

}  // namespace elastoloc::learn
