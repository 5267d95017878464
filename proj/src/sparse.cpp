#include "elastoloc/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "elastoloc/errors.hpp"

namespace elastoloc {

CsrMatrix::CsrMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets)
    : rows_(rows), cols_(cols) {
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    row_ptr_.assign(rows + 1, 0);
    col_idx_.reserve(triplets.size());
    values_.reserve(triplets.size());
    for (std::size_t t = 0; t < triplets.size();) {
        const Triplet& first = triplets[t];
        if (first.row >= rows || first.col >= cols) throw InvalidArgument("CsrMatrix: triplet index out of range");
        double sum = 0.0;
        std::size_t u = t;
        for (; u < triplets.size() && triplets[u].row == first.row && triplets[u].col == first.col; ++u)
            sum += triplets[u].value;
        col_idx_.push_back(first.col);
        values_.push_back(sum);
        ++row_ptr_[first.row + 1];
        t = u;
    }
    std::partial_sum(row_ptr_.begin(), row_ptr_.end(), row_ptr_.begin());
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t r = 0; r < rows_; ++r) {
        double sum = 0.0;
        for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) sum += values_[p] * x[col_idx_[p]];
        y[r] = sum;
    }
}

double CsrMatrix::at(std::size_t row, std::size_t col) const {
    const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
    const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
    const auto it = std::lower_bound(first, last, col);
    return (it != last && *it == col) ? values_[static_cast<std::size_t>(it - col_idx_.begin())] : 0.0;
}

std::vector<double> CsrMatrix::diagonal() const {
    std::vector<double> d(std::min(rows_, cols_), 0.0);
    for (std::size_t r = 0; r < d.size(); ++r) d[r] = at(r, r);
    return d;
}

double CsrMatrix::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double CsrMatrix::max_asymmetry() const {
    double m = 0.0;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
            m = std::max(m, std::abs(values_[p] - at(col_idx_[p], r)));
    return m;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void residual(const CsrMatrix& a, std::span<const double> b, std::span<const double> x, std::span<double> r) {
    a.multiply(x, r);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
}

}  // namespace

CgResult pcg_solve(const CsrMatrix& a, std::span<const double> b, std::span<double> x, const CgOptions& options) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n || x.size() != n) throw InvalidArgument("pcg_solve: dimension mismatch");
    if (!(options.rel_tol > 0.0 && options.rel_tol < 1.0)) throw InvalidArgument("pcg_solve: rel_tol must lie in (0, 1)");
    const std::size_t cap = options.max_iterations ? options.max_iterations : 10 * n;

    const double b_norm = norm(b);
    if (b_norm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return {0, 0.0};
    }

    std::vector<double> inv_diag = a.diagonal();
    for (double& d : inv_diag) {
        if (!(d > 0.0)) throw InvalidArgument("pcg_solve: matrix diagonal must be positive");
        d = 1.0 / d;
    }

    std::vector<double> r(n), z(n), p(n), q(n);
    const double target = options.rel_tol * b_norm;
    std::size_t it = 0;
    double true_res = 0.0;

    // The outer loop restarts from the true residual when the recurrence has
    // drifted below the tolerance but the actual residual has not.
    for (int restart = 0; restart < 8; ++restart) {
        residual(a, b, x, r);
        true_res = norm(r);
        if (true_res <= target) return {it, true_res / b_norm};
        for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        p = z;
        double rz = dot(r, z);
        while (it < cap) {
            ++it;
            a.multiply(p, q);
            const double alpha = rz / dot(p, q);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] += alpha * p[i];
                r[i] -= alpha * q[i];
            }
            if (norm(r) <= target) break;
            for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
            const double rz_next = dot(r, z);
            const double beta = rz_next / rz;
            rz = rz_next;
            for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        }
        if (it >= cap) break;
    }
    residual(a, b, x, r);
    true_res = norm(r);
    if (true_res <= target) return {it, true_res / b_norm};
    throw SolverFailure("conjugate gradient did not converge: relative residual " + std::to_string(true_res / b_norm) +
                            " after " + std::to_string(it) + " iterations",
                        true_res / b_norm, it);
}

}  // namespace elastoloc
