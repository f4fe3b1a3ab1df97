#include "helical/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace helical {

CsrMatrix::CsrMatrix(std::size_t rows, std::vector<Entry> entries) {
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    row_ptr_.assign(rows + 1, 0);
    std::int64_t last_row = -1;
    std::int64_t last_col = -1;
    for (const Entry& e : entries) {
        if (e.row < 0 || static_cast<std::size_t>(e.row) >= rows || e.col < 0 ||
            static_cast<std::size_t>(e.col) >= rows) {
            throw std::out_of_range("CsrMatrix: entry outside a square matrix");
        }
        if (e.row == last_row && e.col == last_col) {
            values_.back() += e.value;
            continue;
        }
        cols_.push_back(e.col);
        values_.push_back(e.value);
        ++row_ptr_[static_cast<std::size_t>(e.row) + 1];
        last_row = e.row;
        last_col = e.col;
    }
    for (std::size_t r = 1; r <= rows; ++r) {
        row_ptr_[r] += row_ptr_[r - 1];
    }
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
    const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
    const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
    const auto it = std::lower_bound(first, last, static_cast<std::int64_t>(j));
    return (it != last && *it == static_cast<std::int64_t>(j))
               ? values_[static_cast<std::size_t>(it - cols_.begin())]
               : 0.0;
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    const std::size_t n = rows();
    for (std::size_t r = 0; r < n; ++r) {
        double sum = 0.0;
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            sum += values_[k] * x[static_cast<std::size_t>(cols_[k])];
        }
        y[r] = sum;
    }
}

namespace {

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (const double a : v) m = std::max(m, std::abs(a));
    return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

SolveReport conjugate_gradient(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                               double tol, int max_iter) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("conjugate_gradient: tolerance must be positive");
    }
    const std::size_t n = a.rows();
    if (b.size() != n || x.size() != n) {
        throw std::invalid_argument("conjugate_gradient: size mismatch");
    }
    SolveReport report;
    const double b_norm = max_abs(b);
    if (b_norm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        report.converged = true;
        return report;
    }

    std::vector<double> inv_diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a.diagonal(i);
        if (!(d > 0.0)) {
            throw std::runtime_error("conjugate_gradient: non-positive diagonal entry");
        }
        inv_diag[i] = 1.0 / d;
    }

    std::vector<double> r(n), z(n), p(n), q(n);
    a.multiply(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    const double threshold = tol * b_norm;

    double res = max_abs(r);
    int recomputations = 0;
    while (true) {
        if (res <= threshold) {
            // confirm against the true residual, the recurrence drifts
            a.multiply(x, q);
            for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
            res = max_abs(r);
            if (res <= threshold || recomputations >= 3) {
                report.converged = res <= threshold;
                break;
            }
            ++recomputations;
        }
        if (report.iterations >= max_iter) break;

        for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        std::copy(z.begin(), z.end(), p.begin());
        double rz = dot(r, z);
        // inner loop between true-residual restarts
        while (report.iterations < max_iter) {
            a.multiply(p, q);
            const double pq = dot(p, q);
            if (!(pq > 0.0)) {
                throw std::runtime_error("conjugate_gradient: matrix is not positive definite");
            }
            const double alpha = rz / pq;
            for (std::size_t i = 0; i < n; ++i) {
                x[i] += alpha * p[i];
                r[i] -= alpha * q[i];
            }
            ++report.iterations;
            res = max_abs(r);
            if (res <= threshold) break;
            for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
            const double rz_next = dot(r, z);
            const double beta = rz_next / rz;
            rz = rz_next;
            for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        }
        if (res > threshold) break;
    }
    report.residual = res / b_norm;
    return report;
}

}  // namespace helical
