#ifndef STIEFEL_HOUSEHOLDER_HPP
#define STIEFEL_HOUSEHOLDER_HPP

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "stiefel/error.hpp"
#include "stiefel/matrix.hpp"

namespace stiefel {

/// Compact Householder factorization of an m x d matrix (d <= m):
/// `r` holds the d x d triangular factor, `reflectors[k]` the unnormalized
/// vector v_k acting on rows k..m-1 with H_k = I - tau_k v_k v_kᵀ.
struct HouseholderFactors {
    Matrix r;
    std::vector<std::vector<double>> reflectors;
    std::vector<double> taus;
    std::size_t rows;
};

inline HouseholderFactors householder_factor(const Matrix& a) {
    const std::size_t m = a.rows();
    const std::size_t d = a.cols();
    if (d > m) {
        throw DimensionError("householder_factor requires cols <= rows");
    }
    Matrix w = a;
    HouseholderFactors out{Matrix(d, d), {}, {}, m};
    out.reflectors.reserve(d);
    out.taus.reserve(d);

    for (std::size_t k = 0; k < d; ++k) {
        auto col = w.column(k).subspan(k);
        std::vector<double> v(col.begin(), col.end());
        const double norm = norm2(v);
        if (norm == 0.0) {
            out.reflectors.push_back(std::move(v));
            out.taus.push_back(0.0);
            continue;
        }
        const double alpha = v[0] >= 0.0 ? -norm : norm;
        v[0] -= alpha;
        const double vv = dot(v, v);
        const double tau = vv > 0.0 ? 2.0 / vv : 0.0;
        for (std::size_t j = k; j < d; ++j) {
            auto target = w.column(j).subspan(k);
            const double s = tau * dot(v, target);
            axpy(-s, v, target);
        }
        w(k, k) = alpha;
        for (std::size_t i = k + 1; i < m; ++i) {
            w(i, k) = 0.0;
        }
        out.reflectors.push_back(std::move(v));
        out.taus.push_back(tau);
    }
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            out.r(i, j) = w(i, j);
        }
    }
    return out;
}

/// Accumulates Q = H_0 H_1 ... H_{d-1}, keeping the first `cols` columns.
inline Matrix householder_q(const HouseholderFactors& f, std::size_t cols) {
    Matrix q = Matrix::standard_frame(f.rows, cols);
    for (std::size_t kk = f.reflectors.size(); kk-- > 0;) {
        const auto& v = f.reflectors[kk];
        const double tau = f.taus[kk];
        if (tau == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < cols; ++j) {
            auto target = q.column(j).subspan(kk);
            const double s = tau * dot(v, target);
            axpy(-s, v, target);
        }
    }
    return q;
}

struct DenseQr {
    Matrix q;
    Matrix r;
};

/// Householder QR of a square full-rank matrix, sign-fixed so diag(r) > 0.
///
/// Independent of the Gram-Schmidt code path; positive-diagonal QR is unique,
/// so agreement with `qr_decompose` is a genuine cross-check.
inline DenseQr householder_qr_oracle(const Matrix& a) {
    if (!a.is_square()) {
        throw DimensionError("householder_qr_oracle requires a square matrix");
    }
    const std::size_t n = a.rows();
    auto f = householder_factor(a);
    Matrix q = householder_q(f, n);
    Matrix r = f.r;

    const double floor =
        static_cast<double>(n) * std::numeric_limits<double>::epsilon() * max_abs(a);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(r(i, i)) <= floor) {
            throw RankDeficientError("householder pivot " + std::to_string(i) + " vanished",
                                     0.0);
        }
        if (r(i, i) < 0.0) {
            for (std::size_t j = i; j < n; ++j) {
                r(i, j) = -r(i, j);
            }
            scale(-1.0, q.column(i));
        }
    }
    return {std::move(q), std::move(r)};
}

} // namespace stiefel

#endif // STIEFEL_HOUSEHOLDER_HPP
