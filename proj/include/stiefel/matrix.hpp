#ifndef STIEFEL_MATRIX_HPP
#define STIEFEL_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stiefel/error.hpp"

namespace stiefel {

/// Dense real matrix, column-major.
///
/// Every algorithm in this library walks a matrix column by column (a map
/// R^d -> R^m is the list of its d image vectors), so columns are contiguous
/// and `column(j)` is a zero-copy span. Both dimensions are strictly positive.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(checked_size(rows, cols), 0.0) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<double> column_major)
        : rows_(rows), cols_(cols), data_(std::move(column_major)) {
        if (data_.size() != checked_size(rows, cols)) {
            throw DimensionError("entry count " + std::to_string(data_.size()) + " does not match " +
                                 std::to_string(rows) + "x" + std::to_string(cols));
        }
    }

    static Matrix from_row_major(std::size_t rows, std::size_t cols, std::span<const double> values) {
        if (values.size() != checked_size(rows, cols)) {
            throw DimensionError("entry count " + std::to_string(values.size()) + " does not match " +
                                 std::to_string(rows) + "x" + std::to_string(cols));
        }
        Matrix out(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                out(i, j) = values[i * cols + j];
            }
        }
        return out;
    }

    /// Literal construction, one brace list per row: `from_rows({{2, 1}, {0, 3}})`.
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.begin()->size();
        std::vector<double> flat;
        flat.reserve(r * c);
        for (const auto& row : rows) {
            if (row.size() != c) {
                throw DimensionError("ragged row in matrix literal");
            }
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return from_row_major(r, c, flat);
    }

    static Matrix identity(std::size_t n) {
        Matrix out(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            out(i, i) = 1.0;
        }
        return out;
    }

    /// The first `cols` standard basis vectors of R^rows.
    static Matrix standard_frame(std::size_t rows, std::size_t cols) {
        Matrix out(rows, cols);
        for (std::size_t j = 0; j < std::min(rows, cols); ++j) {
            out(j, j) = 1.0;
        }
        return out;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i + j * rows_]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i + j * rows_]; }

    std::span<double> column(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
    std::span<const double> column(std::size_t j) const noexcept {
        return {data_.data() + j * rows_, rows_};
    }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    std::vector<double> row_major() const {
        std::vector<double> out;
        out.reserve(data_.size());
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                out.push_back((*this)(i, j));
            }
        }
        return out;
    }

    bool all_finite() const noexcept {
        return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
    }

    /// Exact entrywise equality (bit-level for non-NaN values).
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    static std::size_t checked_size(std::size_t rows, std::size_t cols) {
        if (rows == 0 || cols == 0) {
            throw DimensionError("matrix dimensions must be positive, got " + std::to_string(rows) +
                                 "x" + std::to_string(cols));
        }
        return rows * cols;
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += a[k] * b[k];
    }
    return s;
}

inline double norm2(std::span<const double> a) noexcept { return std::sqrt(dot(a, a)); }

/// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
    for (std::size_t k = 0; k < x.size(); ++k) {
        y[k] += alpha * x[k];
    }
}

inline void scale(double alpha, std::span<double> x) noexcept {
    for (double& v : x) {
        v *= alpha;
    }
}

inline Matrix transpose(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            out(j, i) = a(i, j);
        }
    }
    return out;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("cannot multiply " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " by " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        auto out_col = out.column(j);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double bkj = b(k, j);
            if (bkj != 0.0) {
                axpy(bkj, a.column(k), out_col);
            }
        }
    }
    return out;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }

/// aᵀa, computed from column dot products.
inline Matrix gram(const Matrix& a) {
    Matrix out(a.cols(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            const double g = dot(a.column(i), a.column(j));
            out(i, j) = g;
            out(j, i) = g;
        }
    }
    return out;
}

inline double max_abs(const Matrix& a) noexcept {
    double m = 0.0;
    for (double v : a.data()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("shape mismatch in max_abs_diff");
    }
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    }
    return m;
}

/// max-abs entry of aᵀa - I
inline double orthonormality_defect(const Matrix& a) noexcept {
    double m = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            const double g = dot(a.column(i), a.column(j)) - (i == j ? 1.0 : 0.0);
            m = std::max(m, std::abs(g));
        }
    }
    return m;
}

/// True iff the in-place Cholesky factorization of a symmetric matrix
/// meets only positive pivots, i.e. the matrix is numerically positive definite.
inline bool cholesky_succeeds(const Matrix& spd) {
    if (!spd.is_square()) {
        throw DimensionError("cholesky requires a square matrix");
    }
    const std::size_t n = spd.rows();
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = spd(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            diag -= l(j, k) * l(j, k);
        }
        if (!(diag > 0.0)) {
            return false;
        }
        l(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = spd(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                s -= l(i, k) * l(j, k);
            }
            l(i, j) = s / l(j, j);
        }
    }
    return true;
}

/// Determinant via LU with partial pivoting.
inline double determinant(Matrix a) {
    if (!a.is_square()) {
        throw DimensionError("determinant requires a square matrix");
    }
    const std::size_t n = a.rows();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > std::abs(a(pivot, k))) {
                pivot = i;
            }
        }
        if (a(pivot, k) == 0.0) {
            return 0.0;
        }
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(pivot, j));
            }
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) -= f * a(k, j);
            }
        }
    }
    return det;
}

} // namespace stiefel

#endif // STIEFEL_MATRIX_HPP
