#include "elastoloc/learn/forest.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "elastoloc/errors.hpp"

namespace elastoloc::learn {

Forest::Forest(std::vector<RegressionTree> trees) : trees_(std::move(trees)) {
    if (trees_.empty()) throw InvalidArgument("Forest: needs at least one tree");
    for (const auto& t : trees_)
        if (t.feature_count() != trees_.front().feature_count() || t.output_count() != 3)
            throw InvalidArgument("Forest: trees disagree on shape");
}

Vec3 Forest::predict_one(std::span<const double> x) const {
    check_width(x.size());
    Vec3 sum{0.0, 0.0, 0.0};
    for (const auto& t : trees_) {
        const auto v = t.leaf_value(x);
        for (int k = 0; k < 3; ++k) sum[k] += v[static_cast<std::size_t>(k)];
    }
    const auto n = static_cast<double>(trees_.size());
    return {sum[0] / n, sum[1] / n, sum[2] / n};
}

nlohmann::json Forest::to_json() const {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& t : trees_) trees.push_back(t.to_json());
    return {{"family", "forest"}, {"trees", std::move(trees)}};
}

Forest Forest::from_json(const nlohmann::json& j) {
    std::vector<RegressionTree> trees;
    for (const auto& t : j.at("trees")) trees.push_back(RegressionTree::from_json(t));
    return Forest(std::move(trees));
}

Forest fit_forest(const Matrix& x, const Matrix& y, const ForestParams& params, unsigned workers) {
    if (params.n_estimators < 1) throw InvalidArgument("fit_forest: n_estimators must be >= 1");
    if (x.rows() != y.rows() || x.rows() == 0) throw InvalidArgument("fit_forest: bad training data");
    if (y.cols() != 3) throw InvalidArgument("fit_forest: Y needs three columns");
    const auto n = static_cast<std::size_t>(x.rows());
    const auto d = static_cast<std::size_t>(x.cols());
    const std::size_t per_split = params.features_per_split ? params.features_per_split : std::max<std::size_t>(1, d / 3);

    std::vector<RegressionTree> trees(params.n_estimators);
    std::vector<std::exception_ptr> errors(params.n_estimators);
    auto fit_one = [&](std::size_t t) {
        Rng rng(derive_seed(params.seed, t));
        std::vector<std::size_t> rows;
        if (params.bootstrap) {
            rows.resize(n);
            for (auto& r : rows) r = static_cast<std::size_t>(rng.below(n));
        }
        trees[t] = fit_tree(x, y, params.tree, {rows, per_split, &rng});
    };
    auto run = [&](std::size_t first, std::size_t stride) {
        for (std::size_t t = first; t < params.n_estimators; t += stride) {
            try {
                fit_one(t);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(params.n_estimators)));
    if (workers == 1) {
        run(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return Forest(std::move(trees));
}

}  // namespace elastoloc::learn
