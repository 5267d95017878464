#pragma once

#include <Eigen/Core>

namespace elastoloc {

/// Samples are rows. Row-major so a sample's features are contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

}  // namespace elastoloc
