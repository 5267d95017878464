#include "elastoloc/fem.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "elastoloc/errors.hpp"

namespace elastoloc {

namespace {

constexpr int kElementDofs = 24;
using ElementMatrix = std::array<std::array<double, kElementDofs>, kElementDofs>;

const std::array<Vec3, 8>& gauss_points() {
    static const std::array<Vec3, 8> points = [] {
        const double g = 1.0 / std::sqrt(3.0);
        std::array<Vec3, 8> p{};
        for (int a = 0; a < 8; ++a)
            for (int d = 0; d < 3; ++d) p[a][d] = kCornerSigns[a][d] * g;
        return p;
    }();
    return points;
}

// The grid is uniform, so every element shares one stiffness matrix.
ElementMatrix element_stiffness(const Vec3& h, const Material& m) {
    const double lambda = m.lame_lambda();
    const double mu = m.lame_mu();
    // Voigt order xx, yy, zz, yz, xz, xy with engineering shear strains.
    double c[6][6] = {};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) c[i][j] = lambda;
        c[i][i] = lambda + 2.0 * mu;
        c[i + 3][i + 3] = mu;
    }
    const Vec3 dxi_dx{2.0 / h[0], 2.0 / h[1], 2.0 / h[2]};
    const double det_j = h[0] * h[1] * h[2] / 8.0;

    ElementMatrix ke{};
    for (const Vec3& q : gauss_points()) {
        const auto dn = shape_gradients(q);
        double b[6][kElementDofs] = {};
        for (int a = 0; a < 8; ++a) {
            const double gx = dn[a][0] * dxi_dx[0];
            const double gy = dn[a][1] * dxi_dx[1];
            const double gz = dn[a][2] * dxi_dx[2];
            const int col = 3 * a;
            b[0][col] = gx;
            b[1][col + 1] = gy;
            b[2][col + 2] = gz;
            b[3][col + 1] = gz;
            b[3][col + 2] = gy;
            b[4][col] = gz;
            b[4][col + 2] = gx;
            b[5][col] = gy;
            b[5][col + 1] = gx;
        }
        double cb[6][kElementDofs] = {};
        for (int i = 0; i < 6; ++i)
            for (int k = 0; k < 6; ++k)
                if (c[i][k] != 0.0)
                    for (int j = 0; j < kElementDofs; ++j) cb[i][j] += c[i][k] * b[k][j];
        for (int i = 0; i < kElementDofs; ++i)
            for (int j = 0; j < kElementDofs; ++j) {
                double s = 0.0;
                for (int k = 0; k < 6; ++k) s += b[k][i] * cb[k][j];
                ke[i][j] += s * det_j;
            }
    }
    // Symmetrize exactly; the products above agree only to rounding.
    for (int i = 0; i < kElementDofs; ++i)
        for (int j = i + 1; j < kElementDofs; ++j) {
            const double v = 0.5 * (ke[i][j] + ke[j][i]);
            ke[i][j] = v;
            ke[j][i] = v;
        }
    return ke;
}

void constrain(LinearSystem& sys, std::span<const DirichletCondition> constraints) {
    const std::size_t n = sys.load.size();
    std::vector<char> fixed(n, 0);
    std::vector<double> value(n, 0.0);
    for (const auto& c : constraints) {
        if (c.dof >= n) throw InvalidArgument("Dirichlet condition on a dof outside the system");
        fixed[c.dof] = 1;
        value[c.dof] = c.value;
    }
    const auto rp = sys.stiffness.row_ptr();
    const auto ci = sys.stiffness.col_idx();
    auto vals = sys.stiffness.values();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t p = rp[r]; p < rp[r + 1]; ++p) {
            const std::size_t c = ci[p];
            if (fixed[r]) {
                vals[p] = (c == r) ? 1.0 : 0.0;
            } else if (fixed[c]) {
                sys.load[r] -= vals[p] * value[c];
                vals[p] = 0.0;
            }
        }
    }
    sys.constrained_dofs.clear();
    sys.constrained_values.clear();
    for (std::size_t d = 0; d < n; ++d)
        if (fixed[d]) {
            sys.load[d] = value[d];
            sys.constrained_dofs.push_back(d);
            sys.constrained_values.push_back(value[d]);
        }
}

}  // namespace

void Material::validate() const {
    if (!(young_modulus > 0.0)) throw InvalidArgument("material: Young's modulus must be positive");
    if (!(poisson_ratio > 0.0 && poisson_ratio < 0.5))
        throw InvalidArgument("material: Poisson ratio must lie in (0, 0.5)");
}

void SourceSpec::validate() const {
    if (!(eps > 0.0)) throw InvalidArgument("source: eps must be positive");
    if (!std::isfinite(amplitude)) throw InvalidArgument("source: amplitude must be finite");
    for (double d : direction)
        if (!std::isfinite(d)) throw InvalidArgument("source: direction must be finite");
}

Vec3 body_force(const Vec3& x, const SourceSpec& source) {
    if (!(source.eps > 0.0)) throw InvalidArgument("body_force: eps must be positive");
    const double v = source.amplitude * std::exp(-squared_distance(x, source.center) / source.eps);
    return {v * source.direction[0], v * source.direction[1], v * source.direction[2]};
}

CsrMatrix assemble_stiffness(const HexMesh& mesh, const Material& material) {
    material.validate();
    const ElementMatrix ke = element_stiffness(mesh.spacing(), material);
    std::vector<Triplet> triplets;
    triplets.reserve(mesh.element_count() * kElementDofs * kElementDofs);
    for (const Element& e : mesh.elements())
        for (int a = 0; a < 8; ++a)
            for (int da = 0; da < 3; ++da)
                for (int b = 0; b < 8; ++b)
                    for (int db = 0; db < 3; ++db)
                        triplets.push_back({3 * e[a] + da, 3 * e[b] + db, ke[3 * a + da][3 * b + db]});
    const std::size_t n = 3 * mesh.node_count();
    return CsrMatrix(n, n, std::move(triplets));
}

std::vector<double> assemble_load(const HexMesh& mesh, const SourceSpec& source) {
    source.validate();
    const Vec3 h = mesh.spacing();
    const double det_j = h[0] * h[1] * h[2] / 8.0;
    std::vector<double> f(3 * mesh.node_count(), 0.0);
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        const Element& nodes = mesh.elements()[e];
        for (const Vec3& q : gauss_points()) {
            const auto n = shape_functions(q);
            const Vec3 force = body_force(mesh.local_to_global(e, q), source);
            for (int a = 0; a < 8; ++a)
                for (int d = 0; d < 3; ++d) f[3 * nodes[a] + d] += n[a] * force[d] * det_j;
        }
    }
    return f;
}

std::vector<DirichletCondition> clamped_bottom(const HexMesh& mesh) {
    std::vector<DirichletCondition> out;
    const Divisions& dv = mesh.divisions();
    for (int j = 0; j <= dv.ny; ++j)
        for (int i = 0; i <= dv.nx; ++i) {
            const std::size_t node = mesh.node_index(i, j, 0);
            for (std::size_t d = 0; d < 3; ++d) out.push_back({3 * node + d, 0.0});
        }
    return out;
}

LinearSystem make_system(std::shared_ptr<const HexMesh> mesh, CsrMatrix stiffness, std::vector<double> load,
                         std::span<const DirichletCondition> constraints) {
    if (!mesh) throw InvalidArgument("make_system: null mesh");
    const std::size_t n = 3 * mesh->node_count();
    if (stiffness.rows() != n || stiffness.cols() != n || load.size() != n)
        throw InvalidArgument("make_system: stiffness/load size does not match the mesh");
    LinearSystem sys{std::move(mesh), std::move(stiffness), std::move(load), {}, {}};
    constrain(sys, constraints);
    return sys;
}

LinearSystem assemble(std::shared_ptr<const HexMesh> mesh, const Material& material, const SourceSpec& source) {
    if (!mesh) throw InvalidArgument("assemble: null mesh");
    auto k = assemble_stiffness(*mesh, material);
    auto f = assemble_load(*mesh, source);
    const auto bc = clamped_bottom(*mesh);
    return make_system(std::move(mesh), std::move(k), std::move(f), bc);
}

Solution solve(const LinearSystem& system, double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw InvalidArgument("solve: rel_tol must lie in (0, 1)");
    std::vector<double> u(system.load.size(), 0.0);
    for (std::size_t i = 0; i < system.constrained_dofs.size(); ++i)
        u[system.constrained_dofs[i]] = system.constrained_values[i];
    const CgResult cg = pcg_solve(system.stiffness, system.load, u, {rel_tol, 0});
    for (std::size_t i = 0; i < system.constrained_dofs.size(); ++i)
        u[system.constrained_dofs[i]] = system.constrained_values[i];
    return {DisplacementField(system.mesh, std::move(u)), cg};
}

DisplacementField::DisplacementField(std::shared_ptr<const HexMesh> mesh, std::vector<double> nodal)
    : mesh_(std::move(mesh)), nodal_(std::move(nodal)) {
    if (!mesh_) throw InvalidArgument("DisplacementField: null mesh");
    if (nodal_.size() != 3 * mesh_->node_count())
        throw InvalidArgument("DisplacementField: expected 3 values per node");
    for (double v : nodal_)
        if (!std::isfinite(v)) throw InvalidArgument("DisplacementField: non-finite nodal value");
}

Vec3 DisplacementField::displacement(const Vec3& x) const {
    const PointLocation loc = mesh_->locate(x);
    const auto n = shape_functions(loc.xi);
    const Element& e = mesh_->elements()[loc.element];
    Vec3 u{0.0, 0.0, 0.0};
    for (int a = 0; a < 8; ++a)
        for (int d = 0; d < 3; ++d) u[d] += n[a] * nodal_[3 * e[a] + d];
    return u;
}

Mat3 DisplacementField::element_gradient(const PointLocation& loc) const {
    const auto dn = shape_gradients(loc.xi);
    const Vec3 h = mesh_->spacing();
    const Element& e = mesh_->elements()[loc.element];
    Mat3 g{};
    for (int a = 0; a < 8; ++a)
        for (int i = 0; i < 3; ++i) {
            const double ua = nodal_[3 * e[a] + i];
            for (int j = 0; j < 3; ++j) g[i][j] += ua * dn[a][j] * (2.0 / h[j]);
        }
    return g;
}

Mat3 DisplacementField::gradient(const Vec3& x) const { return element_gradient(mesh_->locate(x)); }

Mat3 DisplacementField::gradient_averaged(const Vec3& x) const {
    const auto locs = mesh_->locate_all(x);
    Mat3 sum{};
    for (const auto& loc : locs) {
        const Mat3 g = element_gradient(loc);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) sum[i][j] += g[i][j];
    }
    const double inv = 1.0 / static_cast<double>(locs.size());
    for (auto& row : sum)
        for (double& v : row) v *= inv;
    return sum;
}

ForwardModel::ForwardModel(std::shared_ptr<const HexMesh> mesh, const Material& material)
    : mesh_(std::move(mesh)), material_(material) {
    if (!mesh_) throw InvalidArgument("ForwardModel: null mesh");
    auto k = assemble_stiffness(*mesh_, material_);
    std::vector<double> zero(3 * mesh_->node_count(), 0.0);
    const auto bc = clamped_bottom(*mesh_);
    base_ = make_system(mesh_, std::move(k), std::move(zero), bc);
}

Solution ForwardModel::solve(const SourceSpec& source, double rel_tol) const {
    // Homogeneous constraints: eliminating them from the load only zeroes the
    // constrained entries, which is exactly what make_system does.
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw InvalidArgument("solve: rel_tol must lie in (0, 1)");
    std::vector<double> f = assemble_load(*mesh_, source);
    for (std::size_t d : base_.constrained_dofs) f[d] = 0.0;
    std::vector<double> u(f.size(), 0.0);
    const CgResult cg = pcg_solve(base_.stiffness, f, u, {rel_tol, 0});
    for (std::size_t d : base_.constrained_dofs) u[d] = 0.0;
    return {DisplacementField(mesh_, std::move(u)), cg};
}

}  // namespace elastoloc
