#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "elastoloc/geometry.hpp"
#include "elastoloc/matrix.hpp"

namespace elastoloc::learn {

enum class Family { linear, tree, forest, gbt, knn, ensemble };

std::string to_string(Family family);
/// Accepts the names produced by to_string. Throws ConfigError otherwise.
Family parse_family(const std::string& name);
const std::vector<Family>& all_families();

/// A fitted model mapping a feature row to a 3-D source position.
/// Implementations are immutable after fitting.
class Regressor {
public:
    virtual ~Regressor() = default;

    virtual Family family() const = 0;
    virtual std::size_t feature_count() const = 0;
    virtual Vec3 predict_one(std::span<const double> x) const = 0;
    virtual nlohmann::json to_json() const = 0;

    /// Row-wise predict_one; throws InvalidArgument on a column-count mismatch.
    Matrix predict(const Matrix& x) const;

protected:
    void check_width(std::size_t got) const;
};

std::unique_ptr<Regressor> regressor_from_json(const nlohmann::json& j);

}  // namespace elastoloc::learn
