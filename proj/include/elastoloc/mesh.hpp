#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "elastoloc/geometry.hpp"

namespace elastoloc {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double length() const { return hi - lo; }
};

/// Axis-aligned box occupied by the body, in metres.
struct DomainBounds {
    Interval x{0.0, 0.3};
    Interval y{-0.05, 0.05};
    Interval z{0.0, 0.05};

    const Interval& axis(int a) const { return a == 0 ? x : (a == 1 ? y : z); }
    double volume() const { return x.length() * y.length() * z.length(); }
    bool contains(const Vec3& p) const;
    void validate() const;

    static DomainBounds unit_cube() { return {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}; }
};

struct Divisions {
    int nx = 10;
    int ny = 5;
    int nz = 4;

    int operator[](int a) const { return a == 0 ? nx : (a == 1 ? ny : nz); }
    bool operator==(const Divisions&) const = default;
};

/// Corner ordering of an element, matching the trilinear reference cube
/// [-1,1]^3: bottom face (zeta=-1) counter-clockwise from (-1,-1), then the
/// top face in the same order.
inline constexpr std::array<std::array<int, 3>, 8> kCornerSigns{{
    {-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1},
    {-1, -1, 1},  {1, -1, 1},  {1, 1, 1},  {-1, 1, 1},
}};

using Element = std::array<std::size_t, 8>;

struct PointLocation {
    std::size_t element = 0;
    Vec3 xi{};  ///< local coordinates in [-1,1]^3
};

/// Uniform structured hexahedral mesh of a box.
///
/// Nodes are numbered lexicographically in (i, j, k) with i fastest, and
/// elements likewise. Immutable after construction.
class HexMesh {
public:
    HexMesh(Divisions divisions, DomainBounds bounds);

    const DomainBounds& bounds() const { return bounds_; }
    const Divisions& divisions() const { return divisions_; }
    const std::vector<Vec3>& nodes() const { return nodes_; }
    const std::vector<Element>& elements() const { return elements_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t element_count() const { return elements_.size(); }

    std::size_t node_index(int i, int j, int k) const;
    std::size_t element_index(int i, int j, int k) const;
    /// Coordinate of grid plane `index` along `axis`; the last plane is exactly hi.
    double plane(int axis, int index) const;
    /// Edge lengths of every element (the grid is uniform).
    Vec3 spacing() const;

    Vec3 local_to_global(std::size_t element, const Vec3& xi) const;
    double element_volume(std::size_t element) const;

    /// Finds the element containing `x`. A point on a face shared by several
    /// elements is assigned to the one with the lowest index.
    /// Throws OutOfDomain when x lies outside the bounds.
    PointLocation locate(const Vec3& x) const;

    /// Every element whose closure contains `x` (1, 2, 4 or 8 of them),
    /// in ascending index order.
    std::vector<PointLocation> locate_all(const Vec3& x) const;

    void dump(std::ostream& os) const;

private:
    // Candidate cells along one axis: one cell for an interior coordinate,
    // two when the coordinate lies on an interior grid plane.
    std::vector<int> axis_cells(int axis, double coord) const;
    double local_coordinate(int axis, int cell, double coord) const;

    Divisions divisions_;
    DomainBounds bounds_;
    std::vector<Vec3> nodes_;
    std::vector<Element> elements_;
};

inline HexMesh build_mesh(Divisions divisions, DomainBounds bounds = {}) {
    return HexMesh(divisions, bounds);
}

/// Trilinear shape functions N_a(xi) in kCornerSigns order.
std::array<double, 8> shape_functions(const Vec3& xi);
/// dN_a/dxi_j for each corner a.
std::array<Vec3, 8> shape_gradients(const Vec3& xi);

}  // namespace elastoloc
