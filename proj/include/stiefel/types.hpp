#ifndef STIEFEL_TYPES_HPP
#define STIEFEL_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "stiefel/condition.hpp"
#include "stiefel/error.hpp"
#include "stiefel/matrix.hpp"

namespace stiefel {

inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kDefaultOrthoTol = 1e-10;
inline constexpr double kDefaultDetTol = 1e-10;
inline constexpr double kDefaultReconTol = 1e-10;

/// Tag for constructors that skip validation. Only library code that has
/// already established the invariant should use it.
struct unchecked_t {
    explicit unchecked_t() = default;
};
inline constexpr unchecked_t unchecked{};

/// An m x d matrix with linearly independent columns (d <= m).
class InjectiveMap {
public:
    InjectiveMap(unchecked_t, Matrix matrix, double condition_estimate)
        : matrix_(std::move(matrix)), condition_estimate_(condition_estimate) {}

    const Matrix& matrix() const noexcept { return matrix_; }
    /// Ratio of largest to smallest singular value; diagnostic only.
    double condition_estimate() const noexcept { return condition_estimate_; }
    std::size_t rows() const noexcept { return matrix_.rows(); }
    std::size_t cols() const noexcept { return matrix_.cols(); }

private:
    Matrix matrix_;
    double condition_estimate_;
};

/// An m x d matrix with orthonormal columns.
class StiefelFrame {
public:
    StiefelFrame(unchecked_t, Matrix matrix) : matrix_(std::move(matrix)) {}

    const Matrix& matrix() const noexcept { return matrix_; }
    std::size_t rows() const noexcept { return matrix_.rows(); }
    std::size_t cols() const noexcept { return matrix_.cols(); }

private:
    Matrix matrix_;
};

/// An m x m orthogonal matrix with determinant +1.
class Rotation {
public:
    Rotation(unchecked_t, Matrix matrix) : matrix_(std::move(matrix)) {}

    static Rotation identity(std::size_t m) { return {unchecked, Matrix::identity(m)}; }

    const Matrix& matrix() const noexcept { return matrix_; }
    std::size_t dim() const noexcept { return matrix_.rows(); }

private:
    Matrix matrix_;
};

/// d x d upper-triangular matrix with strictly positive diagonal.
///
/// Only the upper triangle is stored, row-major within the triangle; the
/// strictly lower part reads as zero.
class UpperTriangularPositive {
public:
    /// Reads the upper triangle of a square matrix. The strictly lower part
    /// must be exactly zero and the diagonal strictly positive.
    static UpperTriangularPositive from_dense(const Matrix& a) {
        if (!a.is_square()) {
            throw DimensionError("upper-triangular factor must be square");
        }
        if (!a.all_finite()) {
            throw NonFiniteError("upper-triangular factor has non-finite entries");
        }
        const std::size_t n = a.rows();
        std::vector<double> packed;
        packed.reserve(n * (n + 1) / 2);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (a(i, j) != 0.0) {
                    throw DomainError("strictly lower entry (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") is nonzero");
                }
            }
            if (!(a(i, i) > 0.0)) {
                throw DomainError("diagonal entry " + std::to_string(i) + " is not positive");
            }
            for (std::size_t j = i; j < n; ++j) {
                packed.push_back(a(i, j));
            }
        }
        return UpperTriangularPositive(n, std::move(packed));
    }

    static UpperTriangularPositive identity(std::size_t n) {
        return from_dense(Matrix::identity(n));
    }

    std::size_t dim() const noexcept { return dim_; }

    double operator()(std::size_t i, std::size_t j) const noexcept {
        return i > j ? 0.0 : entries_[offset(i) + (j - i)];
    }

    double min_diagonal() const noexcept {
        double m = entries_[0];
        for (std::size_t i = 1; i < dim_; ++i) {
            m = std::min(m, (*this)(i, i));
        }
        return m;
    }

    /// Packed upper triangle, row-major within the triangle.
    const std::vector<double>& entries() const noexcept { return entries_; }

    Matrix to_dense() const {
        Matrix out(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = i; j < dim_; ++j) {
                out(i, j) = (*this)(i, j);
            }
        }
        return out;
    }

    friend bool operator==(const UpperTriangularPositive&, const UpperTriangularPositive&) = default;

private:
    UpperTriangularPositive(std::size_t dim, std::vector<double> entries)
        : dim_(dim), entries_(std::move(entries)) {}

    std::size_t offset(std::size_t i) const noexcept { return i * dim_ - i * (i - 1) / 2; }

    std::size_t dim_;
    std::vector<double> entries_;
};

inline Matrix operator*(const Matrix& a, const UpperTriangularPositive& u) {
    if (a.cols() != u.dim()) {
        throw DimensionError("cannot multiply " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " by triangular " +
                             std::to_string(u.dim()));
    }
    Matrix out(a.rows(), u.dim());
    for (std::size_t j = 0; j < u.dim(); ++j) {
        auto out_col = out.column(j);
        for (std::size_t k = 0; k <= j; ++k) {
            const double ukj = u(k, j);
            if (ukj != 0.0) {
                axpy(ukj, a.column(k), out_col);
            }
        }
    }
    return out;
}

inline InjectiveMap validate_injective(const Matrix& raw, double tol_rank = kDefaultRankTol) {
    if (!(tol_rank > 0.0 && tol_rank < 1.0)) {
        throw DomainError("tol_rank must lie in (0, 1)");
    }
    if (!raw.all_finite()) {
        throw NonFiniteError("matrix contains NaN or Inf");
    }
    if (raw.cols() > raw.rows()) {
        throw DimensionError("an injective map R^" + std::to_string(raw.cols()) + " -> R^" +
                             std::to_string(raw.rows()) + " needs cols <= rows");
    }
    const auto sv = estimate_singular_values(raw);
    const double ratio = sv.ratio();
    if (!(ratio > tol_rank)) {
        throw RankDeficientError("singular value ratio " + std::to_string(ratio) +
                                     " is not above tol_rank " + std::to_string(tol_rank),
                                 ratio);
    }
    return {unchecked, raw, sv.condition()};
}

inline StiefelFrame validate_frame(const Matrix& raw, double tol_ortho = kDefaultOrthoTol) {
    if (!raw.all_finite()) {
        throw NonFiniteError("matrix contains NaN or Inf");
    }
    if (raw.cols() > raw.rows()) {
        throw DimensionError("a frame of " + std::to_string(raw.cols()) + " vectors cannot live in R^" +
                             std::to_string(raw.rows()));
    }
    const double deviation = orthonormality_defect(raw);
    if (!(deviation <= tol_ortho)) {
        throw NotOrthonormalError("max |AᵀA - I| = " + std::to_string(deviation), deviation);
    }
    return {unchecked, raw};
}

inline Rotation validate_rotation(const Matrix& raw, double tol_ortho = kDefaultOrthoTol,
                                  double tol_det = kDefaultDetTol) {
    if (!raw.is_square()) {
        throw DimensionError("a rotation must be square");
    }
    validate_frame(raw, tol_ortho);
    const double det = determinant(raw);
    if (!(std::abs(det - 1.0) <= tol_det)) {
        throw NotRotationError("determinant " + std::to_string(det) + " is not +1");
    }
    return {unchecked, raw};
}

/// The inclusion of frames into injective maps: same entries, condition 1.
inline InjectiveMap include_frame(const StiefelFrame& f) { return {unchecked, f.matrix(), 1.0}; }

/// Inverse of a positive-diagonal upper-triangular matrix, one back
/// substitution per column of the identity.
inline UpperTriangularPositive tri_solve_inverse(const UpperTriangularPositive& u) {
    const std::size_t n = u.dim();
    Matrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        inv(j, j) = 1.0 / u(j, j);
        for (std::size_t i = j; i-- > 0;) {
            double s = 0.0;
            for (std::size_t k = i + 1; k <= j; ++k) {
                s += u(i, k) * inv(k, j);
            }
            inv(i, j) = -s / u(i, i);
        }
    }
    return UpperTriangularPositive::from_dense(inv);
}

} // namespace stiefel

#endif // STIEFEL_TYPES_HPP
