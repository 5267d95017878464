#pragma once

#include <string>
#include <vector>

#include "elastoloc/geometry.hpp"
#include "elastoloc/matrix.hpp"

namespace elastoloc::eval {

// All metrics take N x 3 truth/prediction matrices in metres and throw
// InvalidArgument when the shapes differ or N = 0.

/// Mean of all 3N squared residuals.
double mse(const Matrix& truth, const Matrix& pred);
Vec3 per_coordinate_mse(const Matrix& truth, const Matrix& pred);
/// Mean over samples of |y_i - yhat_i|.
double mean_euclidean_distance(const Matrix& truth, const Matrix& pred);
/// sqrt of the sum of all squared residuals: one norm over the whole set.
double total_residual_norm(const Matrix& truth, const Matrix& pred);
/// Column-wise mean |residual|.
Vec3 per_coordinate_mean_abs(const Matrix& truth, const Matrix& pred);

/// Predictions tagged with the sample keys (Dataset::sample_key) they belong to.
struct Predictions {
    std::vector<std::string> keys;
    Matrix values;
};

/// Element-wise mean of two equally shaped prediction sets.
Matrix average_predictions(const Matrix& a, const Matrix& b);
/// As above, but also requires both sets to cover the same samples in the
/// same order.
Predictions average_predictions(const Predictions& a, const Predictions& b);

struct EvalReport {
    std::string model;
    std::size_t n_samples = 0;
    double mse_overall = 0.0;  ///< m^2
    Vec3 mse{};                ///< per coordinate, m^2
    double mean_distance = 0.0;  ///< m
    Vec3 mad{};                  ///< per-coordinate mean absolute deviation, m
};

EvalReport evaluate(const std::string& model, const Matrix& truth, const Matrix& pred);

}  // namespace elastoloc::eval
