#ifndef STIEFEL_EQUIVARIANCE_HPP
#define STIEFEL_EQUIVARIANCE_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "stiefel/error.hpp"
#include "stiefel/gram_schmidt.hpp"
#include "stiefel/homotopy.hpp"
#include "stiefel/matrix.hpp"
#include "stiefel/random.hpp"
#include "stiefel/types.hpp"

namespace stiefel {

/// Haar-distributed element of SO(m), deterministic in `seed`.
///
/// Positive-diagonal QR of a standard Gaussian matrix is Haar on O(m);
/// negating the last column when the determinant is -1 pushes that measure
/// forward to Haar on SO(m).
inline Rotation random_rotation(std::size_t m, std::uint64_t seed) {
    if (m == 0) {
        throw DimensionError("rotation dimension must be positive");
    }
    if (m == 1) {
        return Rotation::identity(1); // SO(1) = {1}; the QR route can land an ulp off
    }
    Rng rng(seed);
    for (;;) {
        Matrix q = [&]() -> Matrix {
            try {
                return qr_decompose(validate_injective(random_gaussian(m, m, rng))).q.matrix();
            } catch (const RankDeficientError&) {
            } catch (const NumericalRankLossError&) {
            }
            return Matrix(1, 1);
        }();
        if (q.rows() != m) {
            continue; // singular draw, probability zero
        }
        if (determinant(q) < 0.0) {
            scale(-1.0, q.column(m - 1));
        }
        return validate_rotation(q);
    }
}

/// Left action O·α, revalidated.
inline InjectiveMap act(const Rotation& o, const InjectiveMap& alpha) {
    if (o.dim() != alpha.rows()) {
        throw DimensionError("rotation of R^" + std::to_string(o.dim()) + " cannot act on maps into R^" +
                             std::to_string(alpha.rows()));
    }
    return validate_injective(o.matrix() * alpha.matrix());
}

inline StiefelFrame act(const Rotation& o, const StiefelFrame& frame,
                        double tol_ortho = kDefaultOrthoTol) {
    if (o.dim() != frame.rows()) {
        throw DimensionError("rotation of R^" + std::to_string(o.dim()) +
                             " cannot act on frames in R^" + std::to_string(frame.rows()));
    }
    return validate_frame(o.matrix() * frame.matrix(), tol_ortho);
}

inline Rotation compose(const Rotation& a, const Rotation& b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("cannot compose rotations of different dimension");
    }
    return validate_rotation(a.matrix() * b.matrix());
}

struct EquivarianceReport {
    double frame_defect = 0.0;
    double coefficient_defect = 0.0;
    std::vector<std::pair<double, double>> homotopy_defects;
    bool passed = false;

    double max_defect() const noexcept {
        double m = std::max(frame_defect, coefficient_defect);
        for (const auto& [t, defect] : homotopy_defects) {
            m = std::max(m, defect);
        }
        return m;
    }
};

/// Evaluates both sides of each equivariance identity and records the
/// max-abs gaps:
///   retract(Oα)        vs O retract(α)
///   M(Oα)              vs M(α)
///   homotopy(Oα, t)    vs O homotopy(α, t)   for every sampled t
inline EquivarianceReport check_equivariance(const InjectiveMap& alpha, const Rotation& o,
                                             std::span<const double> t_samples, double tolerance) {
    if (t_samples.empty()) {
        throw DomainError("t_samples must not be empty");
    }
    for (double t : t_samples) {
        detail::require_unit_interval(t);
    }
    const InjectiveMap rotated = act(o, alpha);
    const auto base = orthonormalize(alpha);
    const auto moved = orthonormalize(rotated);

    EquivarianceReport report;
    report.frame_defect =
        max_abs_diff(moved.frame.matrix(), o.matrix() * base.frame.matrix());
    report.coefficient_defect =
        max_abs_diff(moved.coefficient_matrix.to_dense(), base.coefficient_matrix.to_dense());
    for (double t : t_samples) {
        const auto lhs = homotopy_step(rotated, moved.coefficient_matrix, t);
        const auto rhs = homotopy_step(alpha, base.coefficient_matrix, t);
        report.homotopy_defects.emplace_back(
            t, max_abs_diff(lhs.matrix(), o.matrix() * rhs.matrix()));
    }
    report.passed = report.max_defect() <= tolerance;
    return report;
}

} // namespace stiefel

#endif // STIEFEL_EQUIVARIANCE_HPP
