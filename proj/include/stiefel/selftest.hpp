#ifndef STIEFEL_SELFTEST_HPP
#define STIEFEL_SELFTEST_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stiefel/equivariance.hpp"
#include "stiefel/gram_schmidt.hpp"
#include "stiefel/homotopy.hpp"
#include "stiefel/householder.hpp"
#include "stiefel/io.hpp"
#include "stiefel/parallel.hpp"
#include "stiefel/random.hpp"
#include "stiefel/types.hpp"

namespace stiefel {

inline constexpr std::uint64_t kDefaultSelftestSeed = 20240601;

struct SelftestOptions {
    std::uint64_t seed = kDefaultSelftestSeed;
    bool inject_fault = false;
    std::size_t threads = 1;
};

struct SuiteResult {
    std::string id;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

inline std::string sci(double v) {
    std::ostringstream ss;
    ss.precision(3);
    ss << v;
    return ss.str();
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Runs `body`, which fills `passed` and `detail`; library errors turn into
/// a failed row carrying the message.
inline SuiteResult run_suite(std::string id, std::string name,
                             const std::function<void(SuiteResult&)>& body) {
    SuiteResult result{std::move(id), std::move(name), false, {}, 0.0};
    Stopwatch clock;
    try {
        body(result);
    } catch (const std::exception& e) {
        result.passed = false;
        result.detail = std::string("threw ") + e.what();
    }
    result.seconds = clock.seconds();
    return result;
}

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Upper-triangular D (I + N): diagonal log-uniform in [lo, hi], N strictly
/// upper with entries uniform in [-1, 1] / dim.
inline UpperTriangularPositive random_upper(std::size_t dim, Rng& rng, double lo, double hi) {
    Matrix u(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const double diag = std::exp(uniform_real(rng, std::log(lo), std::log(hi)));
        u(i, i) = diag;
        for (std::size_t j = i + 1; j < dim; ++j) {
            u(i, j) = diag * uniform_real(rng, -1.0, 1.0) / static_cast<double>(dim);
        }
    }
    return UpperTriangularPositive::from_dense(u);
}

} // namespace detail

/// m x d matrix U diag(s) Vᵀ with Haar U, V and singular values log-spaced
/// from 1 down to 1 / condition.
inline Matrix random_with_condition(std::size_t m, std::size_t d, double condition,
                                    std::uint64_t seed) {
    const Matrix u = random_rotation(m, derive_seed(seed, 0)).matrix();
    const Matrix v = random_rotation(d, derive_seed(seed, 1)).matrix();
    Matrix us(m, d);
    for (std::size_t j = 0; j < d; ++j) {
        const double frac = d == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(d - 1);
        const double s = std::pow(condition, -frac);
        for (std::size_t i = 0; i < m; ++i) {
            us(i, j) = u(i, j) * s;
        }
    }
    return us * transpose(v);
}

/// The shared random family: m uniform in 1..max_dim, d uniform in 1..m,
/// entries uniform in [-1, 1], condition estimate at most max_condition.
inline std::vector<InjectiveMap> random_family(std::uint64_t seed, std::size_t count,
                                               std::size_t max_dim = 64,
                                               double max_condition = 1e6) {
    std::vector<InjectiveMap> family;
    family.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Rng rng(derive_seed(seed, k));
        const std::size_t m = detail::uniform_index(rng, 1, max_dim);
        const std::size_t d = detail::uniform_index(rng, 1, m);
        family.push_back(random_injective(m, d, rng, max_condition).map);
    }
    return family;
}

// ---------------------------------------------------------------------------
// Acceptance criteria 1-8
// ---------------------------------------------------------------------------

inline SuiteResult check_orthonormality(const std::vector<InjectiveMap>& family,
                                        double generation_seconds, bool inject_fault = false) {
    return detail::run_suite("1", "orthonormality of the retraction", [&](SuiteResult& r) {
        detail::Stopwatch clock;
        GramSchmidtOptions opts;
        opts.inject_sign_fault = inject_fault;
        double worst = 0.0;
        std::size_t failures = 0;
        for (const auto& alpha : family) {
            try {
                const auto gs = orthonormalize(alpha, opts);
                worst = std::max(worst, orthonormality_defect(gs.frame.matrix()));
            } catch (const NotOrthonormalError& e) {
                worst = std::max(worst, e.deviation());
                ++failures;
            }
        }
        const double elapsed = clock.seconds() + generation_seconds;
        r.passed = failures == 0 && worst <= 1e-10 && elapsed <= 10.0;
        r.detail = "max |QᵀQ - I| = " + detail::sci(worst) + " (bound 1e-10) over " +
                   std::to_string(family.size()) + " maps, " + detail::sci(elapsed) +
                   " s (bound 10 s)";
    });
}

inline SuiteResult check_endpoints(const std::vector<InjectiveMap>& family) {
    return detail::run_suite("2", "deformation-retraction endpoints", [&](SuiteResult& r) {
        double worst = 0.0;
        std::size_t not_identical = 0;
        for (const auto& alpha : family) {
            const auto gs = orthonormalize(alpha);
            const auto start = homotopy_step(alpha, gs.coefficient_matrix, 0.0);
            const auto& a = alpha.matrix().data();
            const auto& b = start.matrix().data();
            if (a.size() != b.size() || std::memcmp(a.data(), b.data(), a.size_bytes()) != 0) {
                ++not_identical;
            }
            const auto end = homotopy_step(alpha, gs.coefficient_matrix, 1.0);
            worst = std::max(worst, max_abs_diff(end.matrix(), gs.frame.matrix()));
        }
        r.passed = not_identical == 0 && worst <= 1e-10;
        r.detail = "t=0 bit-identical for " + std::to_string(family.size() - not_identical) + "/" +
                   std::to_string(family.size()) + ", max |H(1) - retract| = " +
                   detail::sci(worst) + " (bound 1e-10)";
    });
}

inline SuiteResult check_rank_along_path(const std::vector<InjectiveMap>& family) {
    return detail::run_suite("3", "rank preservation along the path", [&](SuiteResult& r) {
        std::size_t failures = 0;
        double min_diag = std::numeric_limits<double>::infinity();
        for (const auto& alpha : family) {
            const auto coeffs = coefficient_matrix(alpha);
            for (int k = 0; k <= 100; ++k) {
                const double t = k / 100.0;
                try {
                    homotopy_step(alpha, coeffs, t);
                } catch (const InternalRankLossError&) {
                    ++failures;
                }
                const double diag = interpolant(coeffs, t).min_diagonal();
                min_diag = std::min(min_diag, diag);
                if (!(diag > 0.0)) {
                    ++failures;
                }
            }
        }
        r.passed = failures == 0;
        r.detail = std::to_string(family.size() * 101 - failures) + "/" +
                   std::to_string(family.size() * 101) +
                   " samples revalidated, smallest interpolant diagonal " + detail::sci(min_diag);
    });
}

inline SuiteResult check_isometry_fixed_point(std::uint64_t seed) {
    return detail::run_suite("4", "fixed point on isometries", [&](SuiteResult& r) {
        const auto seeds = random_family(derive_seed(seed, 4), 200);
        double worst_m = 0.0;
        double worst_path = 0.0;
        for (const auto& alpha : seeds) {
            const auto frame = include_frame(retract(alpha));
            const auto as_map = validate_injective(frame.matrix());
            const auto coeffs = coefficient_matrix(as_map);
            worst_m = std::max(worst_m, max_abs_diff(coeffs.to_dense(), Matrix::identity(coeffs.dim())));
            const auto path = trace_path(as_map, 101);
            for (const auto& s : path.samples) {
                worst_path = std::max(worst_path, max_abs_diff(s.point.matrix(), as_map.matrix()));
            }
        }
        r.passed = worst_m <= 1e-9 && worst_path <= 1e-9;
        r.detail = "200 frames: max |M - I| = " + detail::sci(worst_m) +
                   ", max path drift = " + detail::sci(worst_path) + " (bound 1e-9)";
    });
}

inline SuiteResult check_qr(std::uint64_t seed) {
    return detail::run_suite("5", "QR correctness and uniqueness", [&](SuiteResult& r) {
        double recon = 0.0;
        double agree = 0.0;
        std::size_t nonpositive = 0;
        for (std::size_t k = 0; k < 200; ++k) {
            Rng rng(derive_seed(derive_seed(seed, 5), k));
            const std::size_t m = detail::uniform_index(rng, 1, 64);
            const auto alpha = random_injective(m, m, rng).map;
            const auto qr = qr_decompose(alpha);
            const Matrix q = qr.q.matrix();
            const Matrix rr = qr.r.to_dense();
            recon = std::max(recon, max_abs_diff(q * qr.r, alpha.matrix()));
            for (std::size_t i = 0; i < m; ++i) {
                nonpositive += rr(i, i) > 0.0 ? 0 : 1;
            }
            const auto oracle = householder_qr_oracle(alpha.matrix());
            agree = std::max({agree, max_abs_diff(q, oracle.q), max_abs_diff(rr, oracle.r)});
        }
        r.passed = recon <= 1e-9 && agree <= 1e-9 && nonpositive == 0;
        r.detail = "200 matrices: max |QR - A| = " + detail::sci(recon) +
                   ", max gap to Householder = " + detail::sci(agree) + " (bound 1e-9)";
    });
}

inline SuiteResult check_sphere_closed_form(std::uint64_t seed) {
    return detail::run_suite("6", "d=1 closed form", [&](SuiteResult& r) {
        double worst = 0.0;
        double worst_norm = 0.0;
        for (std::size_t k = 0; k < 1000; ++k) {
            Rng rng(derive_seed(derive_seed(seed, 6), k));
            const std::size_t m = detail::uniform_index(rng, 1, 64);
            const double t = detail::uniform_real(rng, 0.0, 1.0);
            const auto alpha = random_injective(m, 1, rng).map;
            const auto v = alpha.matrix().column(0);
            const auto closed = sphere_interpolant(v, t);
            const auto step = homotopy_step(alpha, t);
            worst = std::max(worst, max_abs_diff(Matrix(m, 1, closed), step.matrix()));
            worst_norm = std::max(worst_norm, std::abs(norm2(sphere_interpolant(v, 1.0)) - 1.0));
        }
        r.passed = worst <= 1e-12 && worst_norm <= 1e-12;
        r.detail = "1000 (v, t): max gap = " + detail::sci(worst) + ", max | |v(1)| - 1 | = " +
                   detail::sci(worst_norm) + " (bound 1e-12)";
    });
}

inline SuiteResult check_equivariance_suite(std::uint64_t seed) {
    return detail::run_suite("7", "SO(m) equivariance", [&](SuiteResult& r) {
        detail::Stopwatch clock;
        const std::array<double, 5> ts{0.0, 0.25, 0.5, 0.75, 1.0};
        double worst = 0.0;
        std::size_t failures = 0;
        for (std::size_t k = 0; k < 500; ++k) {
            const std::uint64_t item = derive_seed(derive_seed(seed, 7), k);
            Rng rng(item);
            const std::size_t m = detail::uniform_index(rng, 1, 32);
            const std::size_t d = detail::uniform_index(rng, 1, m);
            const auto alpha = random_injective(m, d, rng, 1e4).map;
            const auto o = random_rotation(m, derive_seed(item, 1));
            const auto report = check_equivariance(alpha, o, ts, 1e-9);
            worst = std::max(worst, report.max_defect());
            failures += report.passed ? 0 : 1;
        }
        const double elapsed = clock.seconds();
        r.passed = failures == 0 && elapsed <= 20.0;
        r.detail = "500 pairs: max defect = " + detail::sci(worst) + " (bound 1e-9), " +
                   detail::sci(elapsed) + " s (bound 20 s)";
    });
}

inline SuiteResult check_hand_case() {
    return detail::run_suite("8", "hand-case regression", [&](SuiteResult& r) {
        const auto alpha = validate_injective(Matrix::from_rows({{2, 1}, {0, 3}}));
        const auto gs = orthonormalize(alpha);
        const auto qr = qr_decompose(alpha);
        const Matrix expected_m = Matrix::from_rows({{0.5, -1.0 / 6.0}, {0, 1.0 / 3.0}});
        const double frame_gap = max_abs_diff(gs.frame.matrix(), Matrix::identity(2));
        const double m_gap = max_abs_diff(gs.coefficient_matrix.to_dense(), expected_m);
        const double r_gap = max_abs_diff(qr.r.to_dense(), alpha.matrix());
        r.passed = frame_gap <= 1e-14 && m_gap <= 1e-14 && r_gap <= 1e-14;
        r.detail = "frame gap " + detail::sci(frame_gap) + ", M gap " + detail::sci(m_gap) +
                   ", R gap " + detail::sci(r_gap) + " (bound 1e-14)";
    });
}

/// Criteria 1-8 at full scale.
inline std::vector<SuiteResult> run_acceptance(const SelftestOptions& opts) {
    std::vector<SuiteResult> out;
    detail::Stopwatch gen_clock;
    const auto family = random_family(opts.seed, 1000);
    const double gen_seconds = gen_clock.seconds();
    out.push_back(check_orthonormality(family, gen_seconds, opts.inject_fault));
    out.push_back(check_endpoints(family));
    out.push_back(check_rank_along_path(family));
    out.push_back(check_isometry_fixed_point(opts.seed));
    out.push_back(check_qr(opts.seed));
    out.push_back(check_sphere_closed_form(opts.seed));
    out.push_back(check_equivariance_suite(opts.seed));
    out.push_back(check_hand_case());
    return out;
}

// ---------------------------------------------------------------------------
// Remaining module invariants
// ---------------------------------------------------------------------------

inline std::vector<SuiteResult> run_module_invariants(const SelftestOptions& opts) {
    std::vector<SuiteResult> out;
    const std::uint64_t seed = derive_seed(opts.seed, 100);
    const auto family = random_family(seed, 200);

    out.push_back(detail::run_suite("core.gram", "Gram matrix positive definite", [&](SuiteResult& r) {
        std::size_t ok = 0;
        for (const auto& a : family) {
            ok += cholesky_succeeds(gram(a.matrix())) ? 1 : 0;
        }
        r.passed = ok == family.size();
        r.detail = std::to_string(ok) + "/" + std::to_string(family.size()) + " Cholesky successes";
    }));

    out.push_back(detail::run_suite("core.inclusion", "inclusion is the identity; frame round trip",
                                    [&](SuiteResult& r) {
        std::size_t ok = 0;
        for (const auto& a : family) {
            const auto f = retract(a);
            const auto inc = include_frame(f);
            const auto back = validate_frame(inc.matrix());
            ok += (inc.matrix() == f.matrix() && back.matrix() == f.matrix() &&
                   inc.condition_estimate() == 1.0)
                      ? 1
                      : 0;
        }
        r.passed = ok == family.size();
        r.detail = std::to_string(ok) + "/" + std::to_string(family.size()) + " frames";
    }));

    out.push_back(detail::run_suite("core.tri_inverse", "triangular inverse is an involution",
                                    [&](SuiteResult& r) {
        double worst = 0.0;
        for (std::size_t k = 0; k < 200; ++k) {
            Rng rng(derive_seed(seed, 1000 + k));
            const auto u = detail::random_upper(detail::uniform_index(rng, 1, 64), rng, 1e-3, 1e3);
            const auto back = tri_solve_inverse(tri_solve_inverse(u));
            worst = std::max(worst, max_abs_diff(back.to_dense(), u.to_dense()));
        }
        r.passed = worst <= 1e-12;
        r.detail = "max |inv(inv(U)) - U| = " + detail::sci(worst) + " (bound 1e-12)";
    }));

    out.push_back(detail::run_suite("gs.reconstruction", "α M(α) reconstructs the frame",
                                    [&](SuiteResult& r) {
        double worst = 0.0;
        double worst_diag = 0.0;
        for (const auto& a : family) {
            const auto gs = orthonormalize(a);
            worst = std::max(worst, max_abs_diff(a.matrix() * gs.coefficient_matrix, gs.frame.matrix()));
            for (std::size_t i = 0; i < a.cols(); ++i) {
                const double expect = 1.0 / gs.intermediate_norms[i];
                worst_diag = std::max(worst_diag,
                                      std::abs(gs.coefficient_matrix(i, i) - expect) / expect);
            }
        }
        r.passed = worst <= 1e-10 && worst_diag <= 1e-12;
        r.detail = "max |αM - Q| = " + detail::sci(worst) + " (bound 1e-10), diagonal rel gap " +
                   detail::sci(worst_diag) + " (bound 1e-12)";
    }));

    out.push_back(detail::run_suite("gs.right_invariance", "retract(αT) = retract(α)",
                                    [&](SuiteResult& r) {
        double worst = 0.0;
        for (std::size_t k = 0; k < family.size(); ++k) {
            Rng rng(derive_seed(seed, 2000 + k));
            const auto& a = family[k];
            const auto t = detail::random_upper(a.cols(), rng, 0.1, 10.0);
            const auto moved = validate_injective(a.matrix() * t);
            worst = std::max(worst, max_abs_diff(retract(moved).matrix(), retract(a).matrix()));
        }
        r.passed = worst <= 1e-9;
        r.detail = "max gap " + detail::sci(worst) + " (bound 1e-9)";
    }));

    out.push_back(detail::run_suite("gs.variants", "classical and modified agree (cond <= 1e4)",
                                    [&](SuiteResult& r) {
        double worst = 0.0;
        std::size_t used = 0;
        for (const auto& a : family) {
            if (a.condition_estimate() > 1e4) {
                continue;
            }
            ++used;
            const auto c = orthonormalize(a, Variant::Classical);
            const auto m = orthonormalize(a, Variant::Modified);
            worst = std::max(worst, max_abs_diff(c.frame.matrix(), m.frame.matrix()));
        }
        r.passed = worst <= 1e-8 && used > 0;
        r.detail = std::to_string(used) + " maps, max gap " + detail::sci(worst) + " (bound 1e-8)";
    }));

    out.push_back(detail::run_suite("gs.ill_conditioned", "modified stays orthonormal at cond 1e6",
                                    [&](SuiteResult& r) {
        double worst = 0.0;
        for (std::size_t k = 0; k < 20; ++k) {
            Rng rng(derive_seed(seed, 3000 + k));
            const std::size_t m = detail::uniform_index(rng, 2, 64);
            const std::size_t d = detail::uniform_index(rng, 2, m);
            const auto a = validate_injective(random_with_condition(m, d, 1e6, derive_seed(seed, 3100 + k)));
            worst = std::max(worst, orthonormality_defect(retract(a).matrix()));
        }
        r.passed = worst <= 1e-10;
        r.detail = "max |QᵀQ - I| = " + detail::sci(worst) + " (bound 1e-10)";
    }));

    out.push_back(detail::run_suite("gs.replay", "inductive coefficient recursion agrees",
                                    [&](SuiteResult& r) {
        GramSchmidtOptions o;
        o.replay_inductive = true;
        for (const auto& a : family) {
            orthonormalize(a, o);
        }
        r.passed = true;
        r.detail = std::to_string(family.size()) + " maps within 1e-8";
    }));

    out.push_back(detail::run_suite("homotopy.linearity", "interpolant is affine in t",
                                    [&](SuiteResult& r) {
        double worst = 0.0;
        for (std::size_t k = 0; k < 50; ++k) {
            const auto coeffs = coefficient_matrix(family[k]);
            const Matrix i0 = interpolant(coeffs, 0.0).to_dense();
            const Matrix i1 = interpolant(coeffs, 1.0).to_dense();
            for (int s = 0; s <= 100; ++s) {
                const double t = s / 100.0;
                const Matrix it = interpolant(coeffs, t).to_dense();
                for (std::size_t e = 0; e < it.size(); ++e) {
                    const double affine = (1.0 - t) * i0.data()[e] + t * i1.data()[e];
                    const double ulp = std::numeric_limits<double>::epsilon() *
                                       std::max(1.0, std::abs(i1.data()[e]));
                    worst = std::max(worst, std::abs(it.data()[e] - affine) / ulp);
                }
            }
        }
        r.passed = worst <= 4.0;
        r.detail = "max gap " + detail::sci(worst) + " ulp (bound 4 ulp)";
    }));

    out.push_back(detail::run_suite("homotopy.continuity", "finite-difference Lipschitz probe in t",
                                    [&](SuiteResult& r) {
        double worst_ratio = 0.0;
        const double h = 0.01;
        for (std::size_t k = 0; k < 50; ++k) {
            const auto& a = family[k];
            const auto coeffs = coefficient_matrix(a);
            const double lipschitz = 2.0 * static_cast<double>(a.cols()) * max_abs(a.matrix()) *
                                     max_abs_diff(coeffs.to_dense(), Matrix::identity(a.cols()));
            for (int s = 0; s < 100; ++s) {
                const double t = s * h;
                const double gap = max_abs_diff(homotopy_step(a, coeffs, std::min(1.0, t + h)).matrix(),
                                                homotopy_step(a, coeffs, t).matrix());
                if (lipschitz > 0.0) {
                    worst_ratio = std::max(worst_ratio, gap / (lipschitz * h));
                } else if (gap > 0.0) {
                    worst_ratio = std::numeric_limits<double>::infinity();
                }
            }
        }
        r.passed = worst_ratio <= 1.0;
        r.detail = "max |ΔH| / (C h) = " + detail::sci(worst_ratio) + " (bound 1)";
    }));

    out.push_back(detail::run_suite("equiv.haar", "Haar first moment of q00 at m=4", [&](SuiteResult& r) {
        constexpr std::size_t n = 10000;
        std::vector<double> q00(n);
        parallel_for(n, opts.threads, [&](std::size_t i) {
            q00[i] = random_rotation(4, opts.seed + i).matrix()(0, 0);
        });
        double mean = 0.0;
        for (double v : q00) {
            mean += v;
        }
        mean /= static_cast<double>(n);
        r.passed = std::abs(mean) <= 0.05;
        r.detail = "mean " + detail::sci(mean) + " over 1e4 samples (bound |mean| <= 0.05)";
    }));

    out.push_back(detail::run_suite("equiv.action", "left action: identity and composition",
                                    [&](SuiteResult& r) {
        std::size_t identity_exact = 0;
        double worst = 0.0;
        const std::size_t n = 50;
        for (std::size_t k = 0; k < n; ++k) {
            const auto& a = family[k];
            if (act(Rotation::identity(a.rows()), a).matrix() == a.matrix()) {
                ++identity_exact;
            }
            const auto o1 = random_rotation(a.rows(), derive_seed(seed, 4000 + k));
            const auto o2 = random_rotation(a.rows(), derive_seed(seed, 5000 + k));
            worst = std::max(worst, max_abs_diff(act(o1, act(o2, a)).matrix(),
                                                 act(compose(o1, o2), a).matrix()));
        }
        r.passed = identity_exact == n && worst <= 1e-12;
        r.detail = "identity exact " + std::to_string(identity_exact) + "/" + std::to_string(n) +
                   ", composition gap " + detail::sci(worst) + " (bound 1e-12)";
    }));

    out.push_back(detail::run_suite("io.round_trip", "CSV and JSON round trip exactly", [&](SuiteResult& r) {
        std::size_t ok = 0;
        const std::size_t n = 100;
        for (std::size_t k = 0; k < n; ++k) {
            Rng rng(derive_seed(seed, 6000 + k));
            Matrix a = random_uniform(detail::uniform_index(rng, 1, 16), detail::uniform_index(rng, 1, 16), rng);
            for (double& v : a.data()) {
                v = std::ldexp(v, static_cast<int>(detail::uniform_index(rng, 0, 120)) - 60);
            }
            const bool csv_ok = parse_matrix_csv(to_csv(a)) == a;
            const bool json_ok = parse_matrix_json(to_json(a).dump()) == a;
            ok += csv_ok && json_ok ? 1 : 0;
        }
        r.passed = ok == n;
        r.detail = std::to_string(ok) + "/" + std::to_string(n) + " matrices";
    }));

    return out;
}

inline std::vector<SuiteResult> run_selftest(const SelftestOptions& opts) {
    auto results = run_acceptance(opts);
    auto more = run_module_invariants(opts);
    results.insert(results.end(), std::make_move_iterator(more.begin()),
                   std::make_move_iterator(more.end()));
    return results;
}

} // namespace stiefel

#endif // STIEFEL_SELFTEST_HPP
