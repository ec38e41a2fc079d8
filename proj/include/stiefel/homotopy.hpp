#ifndef STIEFEL_HOMOTOPY_HPP
#define STIEFEL_HOMOTOPY_HPP

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "stiefel/error.hpp"
#include "stiefel/gram_schmidt.hpp"
#include "stiefel/matrix.hpp"
#include "stiefel/types.hpp"

namespace stiefel {

namespace detail {

inline void require_unit_interval(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("t = " + std::to_string(t) + " lies outside [0, 1]");
    }
}

} // namespace detail

/// (1 - t) I + t M for a precomputed coefficient matrix M.
inline UpperTriangularPositive interpolant(const UpperTriangularPositive& coeffs, double t) {
    detail::require_unit_interval(t);
    const std::size_t d = coeffs.dim();
    Matrix out(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            out(i, j) = (i == j ? (1.0 - t) : 0.0) + t * coeffs(i, j);
        }
    }
    return UpperTriangularPositive::from_dense(out);
}

inline UpperTriangularPositive interpolant(const InjectiveMap& alpha, double t) {
    detail::require_unit_interval(t);
    return interpolant(coefficient_matrix(alpha), t);
}

/// Point of the deformation retraction at time t given α's coefficient
/// matrix. t = 0 returns α untouched (bit-identical).
inline InjectiveMap homotopy_step(const InjectiveMap& alpha, const UpperTriangularPositive& coeffs,
                                  double t, double tol_rank = kDefaultRankTol) {
    detail::require_unit_interval(t);
    if (t == 0.0) {
        return alpha;
    }
    const Matrix point = alpha.matrix() * interpolant(coeffs, t);
    try {
        return validate_injective(point, tol_rank);
    } catch (const RankDeficientError& e) {
        throw InternalRankLossError("homotopy point at t = " + std::to_string(t) +
                                    " failed revalidation: " + e.what());
    } catch (const NonFiniteError& e) {
        throw InternalRankLossError("homotopy point at t = " + std::to_string(t) +
                                    " is not finite: " + e.what());
    }
}

/// α [(1 - t) I + t M(α)], revalidated as an injective map.
inline InjectiveMap homotopy_step(const InjectiveMap& alpha, double t,
                                  double tol_rank = kDefaultRankTol) {
    detail::require_unit_interval(t);
    if (t == 0.0) {
        return alpha;
    }
    return homotopy_step(alpha, coefficient_matrix(alpha), t, tol_rank);
}

/// Closed form of the homotopy for a single vector:
/// [t (1 - |v|) / |v| + 1] v, which runs from v to v / |v|.
inline std::vector<double> sphere_interpolant(std::span<const double> v, double t,
                                              double tol_rank = kDefaultRankTol) {
    detail::require_unit_interval(t);
    const double n = norm2(v);
    if (!(n > tol_rank)) {
        throw ZeroVectorError("vector norm " + std::to_string(n) + " is not above " +
                              std::to_string(tol_rank));
    }
    const double s = t * ((1.0 - n) / n) + 1.0;
    std::vector<double> out(v.begin(), v.end());
    scale(s, out);
    return out;
}

enum class Spacing { Uniform };

struct PathSample {
    double t;
    InjectiveMap point;
    double min_interpolant_diag;
    double ortho_defect;
};

struct HomotopyPath {
    InjectiveMap source;
    std::vector<PathSample> samples;
};

/// Samples the homotopy at n points t_k = k / (n - 1). M(α) is computed once.
inline HomotopyPath trace_path(const InjectiveMap& alpha, std::size_t n,
                               Spacing spacing = Spacing::Uniform,
                               double tol_rank = kDefaultRankTol) {
    if (n < 2) {
        throw DomainError("a path needs at least 2 samples");
    }
    (void)spacing; // Uniform is the only spacing
    const auto coeffs = coefficient_matrix(alpha);
    HomotopyPath path{alpha, {}};
    path.samples.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(n - 1);
        auto point = homotopy_step(alpha, coeffs, t, tol_rank);
        const double min_diag = interpolant(coeffs, t).min_diagonal();
        const double defect = orthonormality_defect(point.matrix());
        path.samples.push_back({t, std::move(point), min_diag, defect});
    }
    return path;
}

} // namespace stiefel

#endif // STIEFEL_HOMOTOPY_HPP
