#include "elastoloc/learn/knn.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "elastoloc/errors.hpp"

namespace elastoloc::learn {

std::string to_string(Weighting w) { return w == Weighting::uniform ? "uniform" : "distance"; }

Weighting parse_weighting(const std::string& name) {
    if (name == "uniform") return Weighting::uniform;
    if (name == "distance") return Weighting::distance;
    throw ConfigError("unknown kNN weighting '" + name + "' (expected uniform or distance)");
}

KnnModel::KnnModel(Matrix x, Matrix y, KnnParams params) : x_(std::move(x)), y_(std::move(y)), params_(params) {
    if (x_.rows() != y_.rows() || y_.cols() != 3) throw InvalidArgument("KnnModel: need N x D features and N x 3 labels");
    if (params_.k == 0 || params_.k > static_cast<std::size_t>(x_.rows()))
        throw InvalidArgument("KnnModel: k must lie in [1, training size]");
}

Vec3 KnnModel::predict_one(std::span<const double> q) const {
    check_width(q.size());
    const auto n = static_cast<std::size_t>(x_.rows());
    const auto d = static_cast<std::size_t>(x_.cols());
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = x_.row(static_cast<Eigen::Index>(i)).data();
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = row[j] - q[j];
            s += diff * diff;
        }
        dist[i] = {s, i};
    }
    const auto k = static_cast<std::ptrdiff_t>(params_.k);
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

    auto label = [&](std::size_t i, int c) { return y_(static_cast<Eigen::Index>(i), c); };
    Vec3 out{0.0, 0.0, 0.0};
    if (params_.weights == Weighting::distance && dist.front().first == 0.0) {
        std::size_t zeros = 0;
        for (std::ptrdiff_t m = 0; m < k && dist[static_cast<std::size_t>(m)].first == 0.0; ++m, ++zeros)
            for (int c = 0; c < 3; ++c) out[c] += label(dist[static_cast<std::size_t>(m)].second, c);
        for (double& v : out) v /= static_cast<double>(zeros);
        return out;
    }
    double wsum = 0.0;
    for (std::ptrdiff_t m = 0; m < k; ++m) {
        const auto& [sq, i] = dist[static_cast<std::size_t>(m)];
        const double w = params_.weights == Weighting::uniform ? 1.0 : 1.0 / std::sqrt(sq);
        wsum += w;
        for (int c = 0; c < 3; ++c) out[c] += w * label(i, c);
    }
    for (double& v : out) v /= wsum;
    return out;
}

nlohmann::json KnnModel::to_json() const {
    std::vector<double> xs(x_.data(), x_.data() + x_.size());
    std::vector<double> ys(y_.data(), y_.data() + y_.size());
    return {{"family", "knn"},     {"k", params_.k},   {"weights", to_string(params_.weights)},
            {"rows", x_.rows()},   {"features", x_.cols()}, {"x_rowmajor", xs}, {"y_rowmajor", ys}};
}

KnnModel KnnModel::from_json(const nlohmann::json& j) {
    const auto n = j.at("rows").get<Eigen::Index>();
    const auto d = j.at("features").get<Eigen::Index>();
    const auto xs = j.at("x_rowmajor").get<std::vector<double>>();
    const auto ys = j.at("y_rowmajor").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(xs.size()) != n * d || static_cast<Eigen::Index>(ys.size()) != n * 3)
        throw InvalidArgument("knn record: stored data has the wrong size");
    Matrix x = Eigen::Map<const Matrix>(xs.data(), n, d);
    Matrix y = Eigen::Map<const Matrix>(ys.data(), n, 3);
    return KnnModel(std::move(x), std::move(y),
                    {j.at("k").get<std::size_t>(), parse_weighting(j.at("weights").get<std::string>())});
}

KnnModel fit_knn(const Matrix& x, const Matrix& y, const KnnParams& params) { return KnnModel(x, y, params); }

}  // namespace elastoloc::learn
