#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace elastoloc {

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Compressed sparse row matrix; duplicate triplets are summed on construction.
class CsrMatrix {
public:
    CsrMatrix() = default;
    CsrMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const { return values_.size(); }

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
    double at(std::size_t row, std::size_t col) const;
    std::vector<double> diagonal() const;
    double max_abs() const;
    /// max |A - A^T|, computed entrywise over the stored pattern.
    double max_asymmetry() const;

    std::span<const std::size_t> row_ptr() const { return row_ptr_; }
    std::span<const std::size_t> col_idx() const { return col_idx_; }
    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> col_idx_;
    std::vector<double> values_;
};

struct CgOptions {
    double rel_tol = 1e-10;
    /// 0 means 10 x system size.
    std::size_t max_iterations = 0;
};

struct CgResult {
    std::size_t iterations = 0;
    /// ||b - A x|| / ||b|| recomputed from scratch at exit; 0 when b = 0.
    double relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradient for symmetric positive definite A.
/// `x` carries the initial guess in and the solution out. Throws SolverFailure
/// when the tolerance is not met within the iteration cap.
CgResult pcg_solve(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                   const CgOptions& options = {});

}  // namespace elastoloc
