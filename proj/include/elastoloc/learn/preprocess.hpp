#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "elastoloc/datagen.hpp"
#include "elastoloc/matrix.hpp"

namespace elastoloc::learn {

Matrix feature_matrix(const Dataset& dataset);
/// N x 3 source coordinates.
Matrix label_matrix(const Dataset& dataset);
Dataset select_rows(const Dataset& dataset, std::span<const std::size_t> rows);
Matrix select_rows(const Matrix& m, std::span<const std::size_t> rows);

struct SplitSpec {
    double train_fraction = 0.7;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
};

/// Shuffled split; the training side gets ceil(fraction * n) rows.
SplitIndices split_indices(std::size_t n, const SplitSpec& spec);
std::pair<Dataset, Dataset> train_val_split(const Dataset& dataset, const SplitSpec& spec);

/// Column-wise z-score with the population standard deviation. Columns with
/// zero spread transform to 0.
class StandardScaler {
public:
    StandardScaler() = default;
    StandardScaler(Vector mean, Vector stddev);

    static StandardScaler fit(const Matrix& train);

    Matrix transform(const Matrix& x) const;
    void transform_row(std::span<const double> in, std::span<double> out) const;

    const Vector& mean() const { return mean_; }
    const Vector& stddev() const { return std_; }
    Eigen::Index feature_count() const { return mean_.size(); }

private:
    Vector mean_;
    Vector std_;
};

}  // namespace elastoloc::learn
