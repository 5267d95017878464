#include "elastoloc/learn/tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "elastoloc/errors.hpp"

namespace elastoloc::learn {

namespace {

class TreeBuilder {
public:
    TreeBuilder(const Matrix& x, const Matrix& y, const TreeParams& params, const TreeFitOptions& options)
        : x_(x), y_(y), params_(params), rng_(options.rng), outputs_(static_cast<std::size_t>(y.cols())) {
        const auto d = static_cast<std::size_t>(x.cols());
        per_split_ = (options.features_per_split == 0 || options.features_per_split >= d) ? d : options.features_per_split;
        if (per_split_ < d && rng_ == nullptr) throw InvalidArgument("fit_tree: feature subsampling needs an Rng");
        all_features_.resize(d);
        std::iota(all_features_.begin(), all_features_.end(), 0);
        if (options.rows.empty()) {
            rows_.resize(static_cast<std::size_t>(x.rows()));
            std::iota(rows_.begin(), rows_.end(), 0);
        } else {
            rows_.assign(options.rows.begin(), options.rows.end());
        }
        sorted_.reserve(rows_.size());
        left_sum_.resize(outputs_);
        left_sq_.resize(outputs_);
        total_sum_.resize(outputs_);
        total_sq_.resize(outputs_);
        mean_.resize(outputs_);
    }

    RegressionTree build() {
        if (rows_.empty()) throw InvalidArgument("fit_tree: no training rows");
        grow(0, rows_.size(), 0);
        return RegressionTree(static_cast<std::size_t>(x_.cols()), outputs_, std::move(nodes_), std::move(values_));
    }

private:
    struct Split {
        int feature = -1;
        double threshold = 0.0;
        double cost = std::numeric_limits<double>::infinity();
    };

    double label(std::size_t row, std::size_t k) const {
        return y_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(k));
    }
    double feature(std::size_t row, int f) const { return x_(static_cast<Eigen::Index>(row), f); }

    std::int32_t grow(std::size_t begin, std::size_t end, int depth) {
        const auto id = static_cast<std::int32_t>(nodes_.size());
        const std::size_t n = end - begin;
        nodes_.push_back({-1, 0.0, -1, -1, n});

        // Node mean; squared errors below are accumulated about it.
        std::fill(mean_.begin(), mean_.end(), 0.0);
        bool pure = true;
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t k = 0; k < outputs_; ++k) {
                mean_[k] += label(rows_[i], k);
                if (label(rows_[i], k) != label(rows_[begin], k)) pure = false;
            }
        for (std::size_t k = 0; k < outputs_; ++k) {
            mean_[k] /= static_cast<double>(n);
            values_.push_back(pure ? label(rows_[begin], k) : mean_[k]);
        }

        const bool depth_left = params_.max_depth < 0 || depth < params_.max_depth;
        const std::size_t min_leaf = std::max<std::size_t>(1, params_.min_samples_leaf);
        if (pure || !depth_left || n < 2 * min_leaf) return id;

        const Split best = find_split(begin, end, min_leaf);
        if (best.feature < 0) return id;

        const auto mid_it = std::stable_partition(
            rows_.begin() + static_cast<std::ptrdiff_t>(begin), rows_.begin() + static_cast<std::ptrdiff_t>(end),
            [&](std::size_t r) { return feature(r, best.feature) <= best.threshold; });
        const auto mid = static_cast<std::size_t>(mid_it - rows_.begin());

        nodes_[static_cast<std::size_t>(id)].feature = best.feature;
        nodes_[static_cast<std::size_t>(id)].threshold = best.threshold;
        const std::int32_t left = grow(begin, mid, depth + 1);
        nodes_[static_cast<std::size_t>(id)].left = left;
        const std::int32_t right = grow(mid, end, depth + 1);
        nodes_[static_cast<std::size_t>(id)].right = right;
        return id;
    }

    std::vector<int> candidate_features() {
        if (per_split_ >= all_features_.size()) return all_features_;
        // Partial Fisher-Yates draw, then ascending order for the tie-break rule.
        std::vector<int> pool = all_features_;
        for (std::size_t i = 0; i < per_split_; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng_->below(pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(per_split_);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    Split find_split(std::size_t begin, std::size_t end, std::size_t min_leaf) {
        const std::size_t n = end - begin;
        std::fill(total_sum_.begin(), total_sum_.end(), 0.0);
        std::fill(total_sq_.begin(), total_sq_.end(), 0.0);
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t k = 0; k < outputs_; ++k) {
                const double c = label(rows_[i], k) - mean_[k];
                total_sum_[k] += c;
                total_sq_[k] += c * c;
            }

        Split best;
        for (int f : candidate_features()) {
            sorted_.clear();
            for (std::size_t i = begin; i < end; ++i) sorted_.emplace_back(feature(rows_[i], f), rows_[i]);
            std::sort(sorted_.begin(), sorted_.end());
            if (sorted_.front().first == sorted_.back().first) continue;

            std::fill(left_sum_.begin(), left_sum_.end(), 0.0);
            std::fill(left_sq_.begin(), left_sq_.end(), 0.0);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                for (std::size_t k = 0; k < outputs_; ++k) {
                    const double c = label(sorted_[i].second, k) - mean_[k];
                    left_sum_[k] += c;
                    left_sq_[k] += c * c;
                }
                const double lo = sorted_[i].first;
                const double hi = sorted_[i + 1].first;
                const std::size_t nl = i + 1;
                const std::size_t nr = n - nl;
                if (!(lo < hi) || nl < min_leaf || nr < min_leaf) continue;
                double cost = 0.0;
                for (std::size_t k = 0; k < outputs_; ++k) {
                    const double rs = total_sum_[k] - left_sum_[k];
                    const double rq = total_sq_[k] - left_sq_[k];
                    cost += (left_sq_[k] - left_sum_[k] * left_sum_[k] / static_cast<double>(nl)) +
                            (rq - rs * rs / static_cast<double>(nr));
                }
                if (cost < best.cost) {
                    double threshold = lo + (hi - lo) / 2.0;
                    if (!(threshold < hi)) threshold = lo;
                    best = {f, threshold, cost};
                }
            }
        }
        return best;
    }

    const Matrix& x_;
    const Matrix& y_;
    TreeParams params_;
    Rng* rng_;
    std::size_t outputs_;
    std::size_t per_split_ = 0;
    std::vector<int> all_features_;
    std::vector<std::size_t> rows_;
    std::vector<std::pair<double, std::size_t>> sorted_;
    std::vector<double> left_sum_, left_sq_, total_sum_, total_sq_, mean_;
    std::vector<RegressionTree::Node> nodes_;
    std::vector<double> values_;
};

}  // namespace

RegressionTree::RegressionTree(std::size_t features, std::size_t outputs, std::vector<Node> nodes,
                               std::vector<double> values)
    : features_(features), outputs_(outputs), nodes_(std::move(nodes)), values_(std::move(values)) {
    if (nodes_.empty() || outputs_ == 0 || values_.size() != nodes_.size() * outputs_)
        throw InvalidArgument("RegressionTree: inconsistent node/value arrays");
    const auto count = static_cast<std::int32_t>(nodes_.size());
    for (const Node& nd : nodes_) {
        if (nd.feature < 0) continue;
        if (static_cast<std::size_t>(nd.feature) >= features_ || nd.left <= 0 || nd.right <= 0 || nd.left >= count ||
            nd.right >= count)
            throw InvalidArgument("RegressionTree: malformed internal node");
    }
}

std::span<const double> RegressionTree::leaf_value(std::span<const double> x) const {
    std::size_t id = 0;
    while (nodes_[id].feature >= 0) {
        const Node& nd = nodes_[id];
        id = static_cast<std::size_t>(x[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right);
    }
    return {values_.data() + id * outputs_, outputs_};
}

Vec3 RegressionTree::predict_one(std::span<const double> x) const {
    check_width(x.size());
    if (outputs_ != 3) throw InvalidArgument("RegressionTree: predict_one needs a three-output tree");
    const auto v = leaf_value(x);
    return {v[0], v[1], v[2]};
}

std::size_t RegressionTree::leaf_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.feature < 0; }));
}

int RegressionTree::depth() const {
    std::vector<int> d(nodes_.size(), 0);
    int best = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        best = std::max(best, d[i]);
        if (nodes_[i].feature >= 0) {
            d[static_cast<std::size_t>(nodes_[i].left)] = d[i] + 1;
            d[static_cast<std::size_t>(nodes_[i].right)] = d[i] + 1;
        }
    }
    return best;
}

nlohmann::json RegressionTree::to_json() const {
    nlohmann::json feature = nlohmann::json::array(), threshold = nlohmann::json::array(),
                   left = nlohmann::json::array(), right = nlohmann::json::array(),
                   samples = nlohmann::json::array();
    for (const Node& n : nodes_) {
        feature.push_back(n.feature);
        threshold.push_back(n.threshold);
        left.push_back(n.left);
        right.push_back(n.right);
        samples.push_back(n.samples);
    }
    return {{"family", "tree"},   {"features", features_}, {"outputs", outputs_}, {"feature", feature},
            {"threshold", threshold}, {"left", left},      {"right", right},      {"samples", samples},
            {"values", values_}};
}

RegressionTree RegressionTree::from_json(const nlohmann::json& j) {
    const auto feature = j.at("feature").get<std::vector<int>>();
    const auto threshold = j.at("threshold").get<std::vector<double>>();
    const auto left = j.at("left").get<std::vector<std::int32_t>>();
    const auto right = j.at("right").get<std::vector<std::int32_t>>();
    const auto samples = j.at("samples").get<std::vector<std::size_t>>();
    if (threshold.size() != feature.size() || left.size() != feature.size() || right.size() != feature.size() ||
        samples.size() != feature.size())
        throw InvalidArgument("tree record: node arrays differ in length");
    std::vector<Node> nodes(feature.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = {feature[i], threshold[i], left[i], right[i], samples[i]};
    return RegressionTree(j.at("features").get<std::size_t>(), j.at("outputs").get<std::size_t>(), std::move(nodes),
                          j.at("values").get<std::vector<double>>());
}

RegressionTree fit_tree(const Matrix& x, const Matrix& y, const TreeParams& params, const TreeFitOptions& options) {
    if (x.rows() != y.rows()) throw InvalidArgument("fit_tree: X and Y row counts differ");
    if (x.rows() == 0 || y.cols() == 0) throw InvalidArgument("fit_tree: empty training data");
    for (std::size_t r : options.rows)
        if (r >= static_cast<std::size_t>(x.rows())) throw InvalidArgument("fit_tree: row index out of range");
    return TreeBuilder(x, y, params, options).build();
}

}  // namespace elastoloc::learn
