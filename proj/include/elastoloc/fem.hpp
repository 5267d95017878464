#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "elastoloc/geometry.hpp"
#include "elastoloc/mesh.hpp"
#include "elastoloc/sparse.hpp"

namespace elastoloc {

/// Homogeneous isotropic linear-elastic material.
struct Material {
    double young_modulus = 1.0e5;  ///< Pa
    double poisson_ratio = 0.45;

    double lame_lambda() const {
        const double nu = poisson_ratio;
        return young_modulus * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    }
    double lame_mu() const { return young_modulus / (2.0 * (1.0 + poisson_ratio)); }
    void validate() const;
};

/// Gaussian body-force source: F(x) = A d exp(-|x - xc|^2 / eps), d = (1,1,1)
/// unless overridden.
struct SourceSpec {
    Vec3 center{0.15, 0.0, 0.025};  ///< m
    double amplitude = 1.0;         ///< N/m^3
    double eps = 0.01;              ///< m^2
    Vec3 direction{1.0, 1.0, 1.0};

    void validate() const;
};

/// Throws InvalidArgument when eps <= 0.
Vec3 body_force(const Vec3& x, const SourceSpec& source);

struct DirichletCondition {
    std::size_t dof;
    double value;
};

/// Assembled (and constrained) system K u = f over 3 dofs per node, dof 3n+d
/// being component d of node n.
struct LinearSystem {
    std::shared_ptr<const HexMesh> mesh;
    CsrMatrix stiffness;
    std::vector<double> load;
    std::vector<std::size_t> constrained_dofs;
    std::vector<double> constrained_values;
};

/// Unconstrained global stiffness, 2x2x2 Gauss quadrature on trilinear elements.
CsrMatrix assemble_stiffness(const HexMesh& mesh, const Material& material);
/// Consistent load vector of the body force, same quadrature as the stiffness.
std::vector<double> assemble_load(const HexMesh& mesh, const SourceSpec& source);
/// u = 0 on every node of the bottom face z = z_lo.
std::vector<DirichletCondition> clamped_bottom(const HexMesh& mesh);

/// Applies Dirichlet data by row/column elimination: the prescribed columns are
/// moved to the right-hand side and the rows replaced by identity rows.
LinearSystem make_system(std::shared_ptr<const HexMesh> mesh, CsrMatrix stiffness, std::vector<double> load,
                         std::span<const DirichletCondition> constraints);

/// Assembles the clamped-bottom, traction-free-elsewhere problem for `source`.
LinearSystem assemble(std::shared_ptr<const HexMesh> mesh, const Material& material, const SourceSpec& source);

/// Nodal displacement solution, evaluable anywhere in the body.
class DisplacementField {
public:
    DisplacementField(std::shared_ptr<const HexMesh> mesh, std::vector<double> nodal);

    const HexMesh& mesh() const { return *mesh_; }
    const std::shared_ptr<const HexMesh>& mesh_ptr() const { return mesh_; }
    std::span<const double> nodal() const { return nodal_; }

    Vec3 displacement(const Vec3& x) const;
    /// Gradient of the trilinear interpolant in the element returned by HexMesh::locate.
    Mat3 gradient(const Vec3& x) const;
    /// Mean of the element gradients over every element touching x. Equals
    /// gradient(x) in element interiors; on faces, edges and nodes it does not
    /// depend on the element tie-break, so mirror-symmetric fields give
    /// mirror-symmetric values.
    Mat3 gradient_averaged(const Vec3& x) const;

private:
    Mat3 element_gradient(const PointLocation& loc) const;

    std::shared_ptr<const HexMesh> mesh_;
    std::vector<double> nodal_;
};

inline Vec3 eval_displacement(const DisplacementField& field, const Vec3& x) { return field.displacement(x); }
inline Mat3 eval_gradient(const DisplacementField& field, const Vec3& x) { return field.gradient(x); }

struct Solution {
    DisplacementField field;
    CgResult cg;
};

/// Solves the system with Jacobi-preconditioned CG; constrained dofs carry
/// their prescribed values exactly. Throws SolverFailure on non-convergence.
Solution solve(const LinearSystem& system, double rel_tol = 1e-10);

/// Clamped-bottom forward model with the stiffness assembled once, for
/// repeated solves against different sources. Immutable; solve() is safe to
/// call concurrently.
class ForwardModel {
public:
    ForwardModel(std::shared_ptr<const HexMesh> mesh, const Material& material);

    const HexMesh& mesh() const { return *mesh_; }
    const std::shared_ptr<const HexMesh>& mesh_ptr() const { return mesh_; }
    const Material& material() const { return material_; }

    /// Same result, bit for bit, as solve(assemble(mesh, material, source), rel_tol).
    Solution solve(const SourceSpec& source, double rel_tol = 1e-10) const;

private:
    std::shared_ptr<const HexMesh> mesh_;
    Material material_;
    LinearSystem base_;  // constrained stiffness with a zero load
};

}  // namespace elastoloc
