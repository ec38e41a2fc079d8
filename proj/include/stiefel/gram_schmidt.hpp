#ifndef STIEFEL_GRAM_SCHMIDT_HPP
#define STIEFEL_GRAM_SCHMIDT_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "stiefel/error.hpp"
#include "stiefel/matrix.hpp"
#include "stiefel/types.hpp"

namespace stiefel {

enum class Variant { Classical, Modified };

inline const char* to_string(Variant v) {
    return v == Variant::Classical ? "Classical" : "Modified";
}

struct GramSchmidtOptions {
    Variant variant = Variant::Modified;
    double tol_rank = kDefaultRankTol;
    double tol_ortho = kDefaultOrthoTol;
    /// Recompute the coefficients with the column-by-column induction and
    /// throw InternalConsistencyError if they disagree with the triangular
    /// inverse by more than 1e-8 (relative to max(1, |M|_max)).
    bool replay_inductive = false;
    /// Test hook: adds the projections instead of subtracting them.
    bool inject_sign_fault = false;
};

struct GramSchmidtResult {
    StiefelFrame frame;
    /// M(α): column j holds the coefficients of frame column j in terms of
    /// the input columns 0..j, so frame = input * coefficient_matrix.
    UpperTriangularPositive coefficient_matrix;
    /// Norms of the projected vectors before normalization.
    std::vector<double> intermediate_norms;
    Variant variant_used;
};

/// Replays the inductive coefficient recursion: the coefficients of frame
/// column i+1 are -Σ_{k=j}^{i} <v_{i+1}, e_k> λ_{k,j} for j <= i and 1 for
/// j = i+1, all divided by the norm of the projected vector.
///
/// Returns the dense d x d matrix in the same layout as `coefficient_matrix`.
inline Matrix inductive_coefficients(const Matrix& input, const Matrix& frame,
                                     std::span<const double> norms) {
    const std::size_t d = input.cols();
    Matrix lambda(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> proj(i);
        for (std::size_t k = 0; k < i; ++k) {
            proj[k] = dot(input.column(i), frame.column(k));
        }
        for (std::size_t j = 0; j < i; ++j) {
            double s = 0.0;
            for (std::size_t k = j; k < i; ++k) {
                s += proj[k] * lambda(j, k);
            }
            lambda(j, i) = -s / norms[i];
        }
        lambda(i, i) = 1.0 / norms[i];
    }
    return lambda;
}

/// Gram-Schmidt orthonormalization of the columns of α.
///
/// Classical follows the textbook rule literally: every projection
/// coefficient is taken against the original column. Modified projects the
/// running remainder one frame vector at a time and then repeats the sweep
/// once, which keeps |QᵀQ - I| at roundoff level up to condition ~1e13.
/// Both compute the same map in exact arithmetic.
///
/// The triangular factor R (α = frame * R) is accumulated during the
/// sweeps; M(α) is its inverse by back substitution.
inline GramSchmidtResult orthonormalize(const InjectiveMap& alpha, const GramSchmidtOptions& opts) {
    const Matrix& a = alpha.matrix();
    const std::size_t d = a.cols();
    Matrix q = a;
    Matrix r(d, d);
    std::vector<double> norms;
    norms.reserve(d);
    const double sign = opts.inject_sign_fault ? 1.0 : -1.0;

    for (std::size_t i = 0; i < d; ++i) {
        auto w = q.column(i);
        if (opts.variant == Variant::Classical) {
            std::vector<double> c(i);
            for (std::size_t j = 0; j < i; ++j) {
                c[j] = dot(q.column(j), a.column(i));
            }
            for (std::size_t j = 0; j < i; ++j) {
                axpy(sign * c[j], q.column(j), w);
                r(j, i) = c[j];
            }
        } else {
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t j = 0; j < i; ++j) {
                    const double c = dot(q.column(j), w);
                    axpy(sign * c, q.column(j), w);
                    r(j, i) += c;
                }
            }
        }
        const double original = norm2(a.column(i));
        const double norm = norm2(w);
        if (!(norm >= opts.tol_rank * original) || norm == 0.0) {
            throw NumericalRankLossError("column " + std::to_string(i) + " collapsed to norm " +
                                             std::to_string(norm) + " from " +
                                             std::to_string(original),
                                         i);
        }
        r(i, i) = norm;
        scale(1.0 / norm, w);
        norms.push_back(norm);
    }

    auto m = tri_solve_inverse(UpperTriangularPositive::from_dense(r));

    if (opts.replay_inductive) {
        const Matrix replay = inductive_coefficients(a, q, norms);
        const Matrix dense = m.to_dense();
        const double scale_ref = std::max(1.0, max_abs(dense));
        const double diff = max_abs_diff(replay, dense);
        if (!(diff <= 1e-8 * scale_ref)) {
            throw InternalConsistencyError("inductive coefficient replay differs by " +
                                           std::to_string(diff));
        }
    }

    return {validate_frame(q, opts.tol_ortho), std::move(m), std::move(norms), opts.variant};
}

inline GramSchmidtResult orthonormalize(const InjectiveMap& alpha, Variant variant = Variant::Modified,
                                        double tol_rank = kDefaultRankTol) {
    GramSchmidtOptions opts;
    opts.variant = variant;
    opts.tol_rank = tol_rank;
    return orthonormalize(alpha, opts);
}

/// The Gram-Schmidt retraction onto the Stiefel manifold.
inline StiefelFrame retract(const InjectiveMap& alpha) { return orthonormalize(alpha).frame; }

/// The unique upper-triangular M with positive diagonal such that
/// α * M has orthonormal columns.
inline UpperTriangularPositive coefficient_matrix(const InjectiveMap& alpha) {
    return orthonormalize(alpha).coefficient_matrix;
}

struct QrResult {
    StiefelFrame q; // square, hence orthogonal
    UpperTriangularPositive r;
};

/// Positive-diagonal QR of a square injective map: q = retract(α),
/// r = M(α)^{-1}, so α = q r.
inline QrResult qr_decompose(const InjectiveMap& alpha) {
    if (alpha.rows() != alpha.cols()) {
        throw DimensionError("qr requires a square matrix");
    }
    auto gs = orthonormalize(alpha);
    return {std::move(gs.frame), tri_solve_inverse(gs.coefficient_matrix)};
}

} // namespace stiefel

#endif // STIEFEL_GRAM_SCHMIDT_HPP
