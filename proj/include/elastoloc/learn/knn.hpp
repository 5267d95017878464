#pragma once

#include <string>

#include "elastoloc/learn/regressor.hpp"

namespace elastoloc::learn {

enum class Weighting { uniform, distance };

std::string to_string(Weighting w);
Weighting parse_weighting(const std::string& name);

struct KnnParams {
    std::size_t k = 4;
    Weighting weights = Weighting::distance;
};

/// Exact k-nearest-neighbour regression under the Euclidean distance.
/// Distance ties go to the lower training-row index.
class KnnModel final : public Regressor {
public:
    KnnModel(Matrix x, Matrix y, KnnParams params);

    Family family() const override { return Family::knn; }
    std::size_t feature_count() const override { return static_cast<std::size_t>(x_.cols()); }
    /// Uniform: mean of the k labels. Distance: sum(y_i / d_i) / sum(1 / d_i),
    /// except that any neighbour at distance 0 reduces the answer to the mean
    /// of the zero-distance labels.
    Vec3 predict_one(std::span<const double> x) const override;
    nlohmann::json to_json() const override;
    static KnnModel from_json(const nlohmann::json& j);

    const KnnParams& params() const { return params_; }

private:
    Matrix x_;
    Matrix y_;
    KnnParams params_;
};

/// Throws InvalidArgument when k is 0 or exceeds the training size.
KnnModel fit_knn(const Matrix& x, const Matrix& y, const KnnParams& params);

}  // namespace elastoloc::learn
