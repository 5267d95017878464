#include "elastoloc/eval.hpp"

#include <cmath>

#include "elastoloc/errors.hpp"

namespace elastoloc::eval {

namespace {

void check(const Matrix& truth, const Matrix& pred) {
    if (truth.rows() != pred.rows() || truth.cols() != pred.cols())
        throw InvalidArgument("metrics: truth and prediction shapes differ");
    if (truth.cols() != 3) throw InvalidArgument("metrics: expected three coordinates per row");
    if (truth.rows() == 0) throw InvalidArgument("metrics: no samples");
}

}  // namespace

double mse(const Matrix& truth, const Matrix& pred) {
    check(truth, pred);
    double s = 0.0;
    for (Eigen::Index i = 0; i < truth.rows(); ++i)
        for (int k = 0; k < 3; ++k) {
            const double r = truth(i, k) - pred(i, k);
            s += r * r;
        }
    return s / static_cast<double>(3 * truth.rows());
}

Vec3 per_coordinate_mse(const Matrix& truth, const Matrix& pred) {
    check(truth, pred);
    Vec3 s{0.0, 0.0, 0.0};
    for (Eigen::Index i = 0; i < truth.rows(); ++i)
        for (int k = 0; k < 3; ++k) {
            const double r = truth(i, k) - pred(i, k);
            s[k] += r * r;
        }
    for (double& v : s) v /= static_cast<double>(truth.rows());
    return s;
}

double mean_euclidean_distance(const Matrix& truth, const Matrix& pred) {
    check(truth, pred);
    double s = 0.0;
    for (Eigen::Index i = 0; i < truth.rows(); ++i)
        s += distance({truth(i, 0), truth(i, 1), truth(i, 2)}, {pred(i, 0), pred(i, 1), pred(i, 2)});
    return s / static_cast<double>(truth.rows());
}

double total_residual_norm(const Matrix& truth, const Matrix& pred) {
    return std::sqrt(mse(truth, pred) * static_cast<double>(3 * truth.rows()));
}

Vec3 per_coordinate_mean_abs(const Matrix& truth, const Matrix& pred) {
    check(truth, pred);
    Vec3 s{0.0, 0.0, 0.0};
    for (Eigen::Index i = 0; i < truth.rows(); ++i)
        for (int k = 0; k < 3; ++k) s[k] += std::abs(truth(i, k) - pred(i, k));
    for (double& v : s) v /= static_cast<double>(truth.rows());
    return s;
}

Matrix average_predictions(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("average_predictions: shapes differ");
    return (a + b) / 2.0;
}

Predictions average_predictions(const Predictions& a, const Predictions& b) {
    if (a.keys.size() != static_cast<std::size_t>(a.values.rows()) ||
        b.keys.size() != static_cast<std::size_t>(b.values.rows()))
        throw InvalidArgument("average_predictions: key count does not match the prediction rows");
    if (a.keys != b.keys) throw InvalidArgument("average_predictions: prediction sets cover different samples");
    return {a.keys, average_predictions(a.values, b.values)};
}

EvalReport evaluate(const std::string& model, const Matrix& truth, const Matrix& pred) {
    return {model,
            static_cast<std::size_t>(truth.rows()),
            mse(truth, pred),
            per_coordinate_mse(truth, pred),
            mean_euclidean_distance(truth, pred),
            per_coordinate_mean_abs(truth, pred)};
}

}  // namespace elastoloc::eval
