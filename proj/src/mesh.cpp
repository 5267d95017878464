#include "elastoloc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "elastoloc/errors.hpp"

namespace elastoloc {

namespace {

// Grid-plane snapping tolerance, in units of element width.
constexpr double kPlaneTol = 1e-9;
// Points this far outside the box (relative to its extent) still count as inside.
constexpr double kBoundsTol = 1e-12;

std::string format_point(const Vec3& x) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << x[0] << ", " << x[1] << ", " << x[2] << ')';
    return os.str();
}

}  // namespace

bool DomainBounds::contains(const Vec3& p) const {
    for (int a = 0; a < 3; ++a) {
        const Interval& iv = axis(a);
        const double tol = kBoundsTol * iv.length();
        if (!(p[a] >= iv.lo - tol && p[a] <= iv.hi + tol)) return false;
    }
    return true;
}

void DomainBounds::validate() const {
    for (int a = 0; a < 3; ++a) {
        const Interval& iv = axis(a);
        if (!(iv.lo < iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
            throw InvalidArgument("domain bounds: each range needs finite lo < hi");
    }
}

HexMesh::HexMesh(Divisions divisions, DomainBounds bounds)
    : divisions_(divisions), bounds_(bounds) {
    if (divisions.nx < 1 || divisions.ny < 1 || divisions.nz < 1)
        throw InvalidArgument("build_mesh: every division count must be >= 1");
    bounds_.validate();

    const auto [nx, ny, nz] = std::array{divisions.nx, divisions.ny, divisions.nz};
    nodes_.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1) * (nz + 1));
    for (int k = 0; k <= nz; ++k)
        for (int j = 0; j <= ny; ++j)
            for (int i = 0; i <= nx; ++i) nodes_.push_back({plane(0, i), plane(1, j), plane(2, k)});

    elements_.reserve(static_cast<std::size_t>(nx) * ny * nz);
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                Element e{};
                for (int a = 0; a < 8; ++a) {
                    const auto& s = kCornerSigns[a];
                    e[a] = node_index(i + (s[0] > 0), j + (s[1] > 0), k + (s[2] > 0));
                }
                elements_.push_back(e);
            }
}

std::size_t HexMesh::node_index(int i, int j, int k) const {
    const auto sx = static_cast<std::size_t>(divisions_.nx + 1);
    const auto sy = static_cast<std::size_t>(divisions_.ny + 1);
    return static_cast<std::size_t>(i) + sx * (static_cast<std::size_t>(j) + sy * static_cast<std::size_t>(k));
}

std::size_t HexMesh::element_index(int i, int j, int k) const {
    const auto sx = static_cast<std::size_t>(divisions_.nx);
    const auto sy = static_cast<std::size_t>(divisions_.ny);
    return static_cast<std::size_t>(i) + sx * (static_cast<std::size_t>(j) + sy * static_cast<std::size_t>(k));
}

double HexMesh::plane(int axis, int index) const {
    const Interval& iv = bounds_.axis(axis);
    const int n = divisions_[axis];
    if (index >= n) return iv.hi;
    if (index <= 0) return iv.lo;
    return iv.lo + iv.length() * static_cast<double>(index) / static_cast<double>(n);
}

Vec3 HexMesh::spacing() const {
    return {bounds_.x.length() / divisions_.nx, bounds_.y.length() / divisions_.ny,
            bounds_.z.length() / divisions_.nz};
}

Vec3 HexMesh::local_to_global(std::size_t element, const Vec3& xi) const {
    const auto n = shape_functions(xi);
    const Element& e = elements_.at(element);
    Vec3 x{0.0, 0.0, 0.0};
    for (int a = 0; a < 8; ++a)
        for (int d = 0; d < 3; ++d) x[d] += n[a] * nodes_[e[a]][d];
    return x;
}

double HexMesh::element_volume(std::size_t element) const {
    const Element& e = elements_.at(element);
    const Vec3& lo = nodes_[e[0]];
    const Vec3& hi = nodes_[e[6]];
    return (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
}

std::vector<int> HexMesh::axis_cells(int axis, double coord) const {
    const Interval& iv = bounds_.axis(axis);
    const int n = divisions_[axis];
    const double t = (coord - iv.lo) / iv.length() * n;
    const double nearest = std::round(t);
    if (std::abs(t - nearest) <= kPlaneTol) {
        const int p = static_cast<int>(nearest);
        if (p <= 0) return {0};
        if (p >= n) return {n - 1};
        return {p - 1, p};
    }
    return {std::clamp(static_cast<int>(std::floor(t)), 0, n - 1)};
}

double HexMesh::local_coordinate(int axis, int cell, double coord) const {
    const double lo = plane(axis, cell);
    const double hi = plane(axis, cell + 1);
    return std::clamp(2.0 * (coord - lo) / (hi - lo) - 1.0, -1.0, 1.0);
}

PointLocation HexMesh::locate(const Vec3& x) const {
    if (!bounds_.contains(x)) throw OutOfDomain("point " + format_point(x) + " lies outside the body");
    std::array<int, 3> cell{};
    for (int a = 0; a < 3; ++a) cell[a] = axis_cells(a, x[a]).front();
    PointLocation loc;
    loc.element = element_index(cell[0], cell[1], cell[2]);
    for (int a = 0; a < 3; ++a) loc.xi[a] = local_coordinate(a, cell[a], x[a]);
    return loc;
}

std::vector<PointLocation> HexMesh::locate_all(const Vec3& x) const {
    if (!bounds_.contains(x)) throw OutOfDomain("point " + format_point(x) + " lies outside the body");
    const auto cx = axis_cells(0, x[0]);
    const auto cy = axis_cells(1, x[1]);
    const auto cz = axis_cells(2, x[2]);
    std::vector<PointLocation> out;
    for (int k : cz)
        for (int j : cy)
            for (int i : cx)
                out.push_back({element_index(i, j, k),
                               {local_coordinate(0, i, x[0]), local_coordinate(1, j, x[1]),
                                local_coordinate(2, k, x[2])}});
    return out;
}

void HexMesh::dump(std::ostream& os) const {
    os.precision(17);
    os << "nodes " << nodes_.size() << '\n';
    for (const auto& p : nodes_) os << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
    os << "elements " << elements_.size() << '\n';
    for (const auto& e : elements_) {
        for (int a = 0; a < 8; ++a) os << e[a] << (a == 7 ? '\n' : ' ');
    }
}

std::array<double, 8> shape_functions(const Vec3& xi) {
    std::array<double, 8> n{};
    for (int a = 0; a < 8; ++a) {
        const auto& s = kCornerSigns[a];
        n[a] = 0.125 * (1.0 + s[0] * xi[0]) * (1.0 + s[1] * xi[1]) * (1.0 + s[2] * xi[2]);
    }
    return n;
}

std::array<Vec3, 8> shape_gradients(const Vec3& xi) {
    std::array<Vec3, 8> g{};
    for (int a = 0; a < 8; ++a) {
        const auto& s = kCornerSigns[a];
        const double fx = 1.0 + s[0] * xi[0];
        const double fy = 1.0 + s[1] * xi[1];
        const double fz = 1.0 + s[2] * xi[2];
        g[a] = {0.125 * s[0] * fy * fz, 0.125 * s[1] * fx * fz, 0.125 * s[2] * fx * fy};
    }
    return g;
}

}  // namespace elastoloc
