#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace helical {

/// Compressed sparse row matrix with sorted column indices.
class CsrMatrix {
public:
    struct Entry {
        std::int64_t row;
        std::int64_t col;
        double value;
    };

    CsrMatrix() = default;
    /// Builds from unsorted triplets; duplicates are summed in input order.
    CsrMatrix(std::size_t rows, std::vector<Entry> entries);

    std::size_t rows() const { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
    std::size_t nonzeros() const { return values_.size(); }

    std::span<const std::size_t> row_ptr() const { return row_ptr_; }
    std::span<const std::int64_t> cols() const { return cols_; }
    std::span<const double> values() const { return values_; }

    /// A(i, j), 0 when not stored.
    double at(std::size_t i, std::size_t j) const;
    double diagonal(std::size_t i) const { return at(i, i); }

    void multiply(std::span<const double> x, std::span<double> y) const;

private:
    std::vector<std::size_t> row_ptr_;
    std::vector<std::int64_t> cols_;
    std::vector<double> values_;
};

struct SolveReport {
    int iterations = 0;
    /// Max-norm residual relative to the max-norm of the right-hand side.
    double residual = 0.0;
    bool converged = false;
};

/// Jacobi-preconditioned conjugate gradients for a symmetric positive
/// definite matrix. Stops when max|b - A x| <= tol * max|b|. `x` holds the
/// initial guess on entry.
SolveReport conjugate_gradient(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                               double tol, int max_iter);

}  // namespace helical
