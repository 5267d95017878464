#include "elastoloc/learn/preprocess.hpp"

#include <cmath>

#include "elastoloc/errors.hpp"
#include "elastoloc/rng.hpp"

namespace elastoloc::learn {

Matrix feature_matrix(const Dataset& dataset) {
    const auto n = static_cast<Eigen::Index>(dataset.size());
    const auto d = static_cast<Eigen::Index>(dataset.feature_count());
    Matrix x(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& f = dataset.samples[static_cast<std::size_t>(i)].features;
        if (static_cast<Eigen::Index>(f.size()) != d) throw InvalidArgument("feature_matrix: ragged dataset");
        for (Eigen::Index j = 0; j < d; ++j) x(i, j) = f[static_cast<std::size_t>(j)];
    }
    return x;
}

Matrix label_matrix(const Dataset& dataset) {
    const auto n = static_cast<Eigen::Index>(dataset.size());
    Matrix y(n, 3);
    for (Eigen::Index i = 0; i < n; ++i)
        for (int a = 0; a < 3; ++a) y(i, a) = dataset.samples[static_cast<std::size_t>(i)].label[a];
    return y;
}

Dataset select_rows(const Dataset& dataset, std::span<const std::size_t> rows) {
    Dataset out{dataset.parts, dataset.layout, {}};
    out.samples.reserve(rows.size());
    for (std::size_t r : rows) out.samples.push_back(dataset.samples.at(r));
    return out;
}

Matrix select_rows(const Matrix& m, std::span<const std::size_t> rows) {
    Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= static_cast<std::size_t>(m.rows())) throw InvalidArgument("select_rows: row out of range");
        out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(rows[i]));
    }
    return out;
}

void SplitSpec::validate() const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw InvalidArgument("split: train_fraction must lie in (0, 1)");
}

SplitIndices split_indices(std::size_t n, const SplitSpec& spec) {
    spec.validate();
    if (n == 0) throw InvalidArgument("train_val_split: empty dataset");
    // 0.7 * 10 evaluates to 7.000000000000001; snap products that are an
    // integer up to rounding before taking the ceiling.
    const double exact = spec.train_fraction * static_cast<double>(n);
    const double nearest = std::round(exact);
    const double rounded = std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact) ? nearest : std::ceil(exact);
    const auto n_train = static_cast<std::size_t>(rounded);

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(spec.seed);
    rng.shuffle(order.begin(), order.end());
    SplitIndices out;
    out.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.validation.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
    return out;
}

std::pair<Dataset, Dataset> train_val_split(const Dataset& dataset, const SplitSpec& spec) {
    const SplitIndices idx = split_indices(dataset.size(), spec);
    return {select_rows(dataset, idx.train), select_rows(dataset, idx.validation)};
}

StandardScaler::StandardScaler(Vector mean, Vector stddev) : mean_(std::move(mean)), std_(std::move(stddev)) {
    if (mean_.size() != std_.size()) throw InvalidArgument("StandardScaler: mean/std size mismatch");
    for (Eigen::Index j = 0; j < std_.size(); ++j)
        if (!(std_[j] >= 0.0)) throw InvalidArgument("StandardScaler: negative standard deviation");
}

StandardScaler StandardScaler::fit(const Matrix& train) {
    if (train.rows() == 0) throw InvalidArgument("StandardScaler::fit: no rows");
    const auto n = static_cast<double>(train.rows());
    Vector mean = train.colwise().sum().transpose() / n;
    Vector sd(train.cols());
    for (Eigen::Index j = 0; j < train.cols(); ++j) {
        double ss = 0.0;
        for (Eigen::Index i = 0; i < train.rows(); ++i) {
            const double d = train(i, j) - mean[j];
            ss += d * d;
        }
        sd[j] = std::sqrt(ss / n);
        // A constant column can still pick up rounding noise in its mean.
        if (sd[j] <= 1e-12 * std::abs(mean[j])) sd[j] = 0.0;
    }
    return {std::move(mean), std::move(sd)};
}

void StandardScaler::transform_row(std::span<const double> in, std::span<double> out) const {
    if (static_cast<Eigen::Index>(in.size()) != mean_.size() || out.size() != in.size())
        throw InvalidArgument("StandardScaler: feature count mismatch");
    for (std::size_t j = 0; j < in.size(); ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        out[j] = std_[jj] > 0.0 ? (in[j] - mean_[jj]) / std_[jj] : 0.0;
    }
}

Matrix StandardScaler::transform(const Matrix& x) const {
    if (x.cols() != mean_.size()) throw InvalidArgument("StandardScaler: feature count mismatch");
    Matrix out(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        transform_row({x.row(i).data(), static_cast<std::size_t>(x.cols())},
                      {out.row(i).data(), static_cast<std::size_t>(x.cols())});
    return out;
}

}  // namespace elastoloc::learn
