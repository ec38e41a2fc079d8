#ifndef STIEFEL_CONDITION_HPP
#define STIEFEL_CONDITION_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "stiefel/householder.hpp"
#include "stiefel/matrix.hpp"

namespace stiefel {

struct SingularValueEstimate {
    double largest;
    double smallest;

    /// smallest / largest, 0 for a numerically singular matrix.
    double ratio() const noexcept { return largest > 0.0 ? smallest / largest : 0.0; }
    double condition() const noexcept {
        return smallest > 0.0 ? largest / smallest : std::numeric_limits<double>::infinity();
    }
};

namespace detail {

// r is d x d upper triangular; all helpers below only read its upper triangle.
inline std::vector<double> upper_times(const Matrix& r, const std::vector<double>& x) {
    const std::size_t d = r.rows();
    std::vector<double> y(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            y[i] += r(i, j) * x[j];
        }
    }
    return y;
}

inline std::vector<double> upper_transpose_times(const Matrix& r, const std::vector<double>& y) {
    const std::size_t d = r.rows();
    std::vector<double> z(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        z[j] = dot(r.column(j).first(j + 1), std::span<const double>(y).first(j + 1));
    }
    return z;
}

// Solves rᵀ y = x (forward substitution).
inline std::vector<double> solve_upper_transpose(const Matrix& r, const std::vector<double>& x) {
    const std::size_t d = r.rows();
    std::vector<double> y(d);
    for (std::size_t j = 0; j < d; ++j) {
        double s = x[j] - dot(r.column(j).first(j), std::span<const double>(y).first(j));
        y[j] = s / r(j, j);
    }
    return y;
}

// Solves r z = y (back substitution).
inline std::vector<double> solve_upper(const Matrix& r, const std::vector<double>& y) {
    const std::size_t d = r.rows();
    std::vector<double> z(y);
    for (std::size_t j = d; j-- > 0;) {
        z[j] /= r(j, j);
        for (std::size_t i = 0; i < j; ++i) {
            z[i] -= r(i, j) * z[j];
        }
    }
    return z;
}

inline bool finite(const std::vector<double>& v) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            return false;
        }
    }
    return true;
}

} // namespace detail

/// Estimates the extreme singular values of an m x d matrix (d <= m).
///
/// The matrix is reduced to its Householder triangle R (same singular
/// values), then power iteration on RᵀR bounds the largest from below and
/// inverse iteration bounds the smallest from above. For nearly
/// rank-deficient input the smallest value is well separated and the
/// estimate converges in a couple of sweeps, which is the regime the rank
/// test cares about.
inline SingularValueEstimate estimate_singular_values(const Matrix& a, int max_iterations = 100,
                                                      double rel_tol = 1e-8) {
    const auto f = householder_factor(a);
    const Matrix& r = f.r;
    const std::size_t d = r.rows();

    if (d == 1) {
        const double s = std::abs(r(0, 0));
        return {s, s};
    }

    // largest: start from the heaviest column of R
    std::size_t heavy = 0;
    double heavy_norm = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double n = norm2(r.column(j).first(j + 1));
        if (n > heavy_norm) {
            heavy_norm = n;
            heavy = j;
        }
    }
    if (heavy_norm == 0.0) {
        return {0.0, 0.0};
    }
    std::vector<double> x(d, 0.0);
    x[heavy] = 1.0;
    double largest = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        const auto y = detail::upper_times(r, x);
        const double sigma = norm2(y);
        auto z = detail::upper_transpose_times(r, y);
        const double zn = norm2(z);
        const bool converged = std::abs(sigma - largest) <= rel_tol * sigma;
        largest = std::max(largest, sigma);
        if (converged || zn == 0.0) {
            break;
        }
        scale(1.0 / zn, z);
        x = std::move(z);
    }

    double smallest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d; ++i) {
        if (r(i, i) == 0.0) {
            return {largest, 0.0};
        }
    }
    x.assign(d, 1.0 / std::sqrt(static_cast<double>(d)));
    for (int it = 0; it < max_iterations; ++it) {
        const auto y = detail::solve_upper_transpose(r, x);
        if (!detail::finite(y)) {
            return {largest, 0.0};
        }
        const double yn = norm2(y);
        const double sigma = 1.0 / yn;
        auto z = detail::solve_upper(r, y);
        if (!detail::finite(z)) {
            return {largest, std::min(smallest, sigma)};
        }
        const bool converged = std::abs(sigma - smallest) <= rel_tol * sigma;
        smallest = std::min(smallest, sigma);
        if (converged) {
            break;
        }
        scale(1.0 / norm2(z), z);
        x = std::move(z);
    }
    return {largest, smallest};
}

} // namespace stiefel

#endif // STIEFEL_CONDITION_HPP
