#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "elastoloc/learn/regressor.hpp"
#include "elastoloc/rng.hpp"

namespace elastoloc::learn {

struct TreeParams {
    int max_depth = 25;  ///< < 0 means unlimited; 0 gives a single leaf
    std::size_t min_samples_leaf = 1;
};

/// CART regression tree over a label matrix with any number of outputs.
/// The "tree" family uses three outputs; gradient boosting uses one.
class RegressionTree final : public Regressor {
public:
    struct Node {
        int feature = -1;  ///< -1 marks a leaf
        double threshold = 0.0;
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::size_t samples = 0;
    };

    RegressionTree() = default;
    RegressionTree(std::size_t features, std::size_t outputs, std::vector<Node> nodes, std::vector<double> values);

    Family family() const override { return Family::tree; }
    std::size_t feature_count() const override { return features_; }
    std::size_t output_count() const { return outputs_; }
    /// Requires three outputs.
    Vec3 predict_one(std::span<const double> x) const override;
    nlohmann::json to_json() const override;
    static RegressionTree from_json(const nlohmann::json& j);

    /// Leaf value reached by x; `output_count()` entries.
    std::span<const double> leaf_value(std::span<const double> x) const;

    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t leaf_count() const;
    int depth() const;

private:
    std::size_t features_ = 0;
    std::size_t outputs_ = 0;
    std::vector<Node> nodes_;
    std::vector<double> values_;  // outputs_ per node: mean label of the node's samples
};

struct TreeFitOptions {
    /// Rows of X/Y to train on (repeats allowed, as in a bootstrap sample).
    /// Empty means every row once.
    std::span<const std::size_t> rows{};
    /// Candidate features drawn per node; 0 or >= D means all of them.
    std::size_t features_per_split = 0;
    /// Source of the per-node feature draws; required when features_per_split
    /// restricts the candidates.
    Rng* rng = nullptr;
};

/// Greedy CART: each split minimises the summed within-child squared error
/// across outputs, trying midpoints between consecutive distinct values.
/// Ties go to the lowest feature index, then the lowest threshold.
RegressionTree fit_tree(const Matrix& x, const Matrix& y, const TreeParams& params,
                        const TreeFitOptions& options = {});

}  // namespace elastoloc::learn
