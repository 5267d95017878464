#pragma once

#include <array>
#include <cmath>

namespace elastoloc {

using Vec3 = std::array<double, 3>;
/// Row-major 3x3; m[i][j] = d u_i / d x_j when used as a displacement gradient.
using Mat3 = std::array<std::array<double, 3>, 3>;

inline double squared_distance(const Vec3& a, const Vec3& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    const double dz = a[2] - b[2];
    return dx * dx + dy * dy + dz * dz;
}

inline double distance(const Vec3& a, const Vec3& b) { return std::sqrt(squared_distance(a, b)); }

}  // namespace elastoloc
