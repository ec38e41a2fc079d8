#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "stiefel/stiefel.hpp"
#include "stiefel/selftest.hpp"

using namespace stiefel;

namespace {

const Matrix kHand = Matrix::from_rows({{2, 1}, {0, 3}});

bool bit_identical(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::memcmp(a.data().data(), b.data().data(), a.size() * sizeof(double)) == 0;
}

} // namespace

TEST(Interpolant, Endpoints) {
    const auto alpha = validate_injective(kHand);
    EXPECT_EQ(interpolant(alpha, 0.0), UpperTriangularPositive::identity(2));
    EXPECT_EQ(interpolant(alpha, 1.0), coefficient_matrix(alpha));
}

TEST(Interpolant, HandCaseMidpoint) {
    const auto mid = interpolant(validate_injective(kHand), 0.5);
    const Matrix expected = Matrix::from_rows({{0.75, -1.0 / 12.0}, {0, 2.0 / 3.0}});
    EXPECT_LE(max_abs_diff(mid.to_dense(), expected), 1e-16);
}

TEST(Interpolant, IsLinearInT) {
    for (const auto& alpha : random_family(31, 20, 12, 1e4)) {
        const auto m = coefficient_matrix(alpha);
        for (double t : {0.1, 0.37, 0.5, 0.9}) {
            const auto it = interpolant(m, t);
            for (std::size_t j = 0; j < m.dim(); ++j) {
                for (std::size_t i = 0; i <= j; ++i) {
                    const double expected = (i == j ? 1.0 - t : 0.0) + t * m(i, j);
                    EXPECT_EQ(it(i, j), expected);
                }
            }
            EXPECT_GT(it.min_diagonal(), 0.0);
        }
    }
}

TEST(Interpolant, RejectsTOutsideUnitInterval) {
    const auto alpha = validate_injective(kHand);
    EXPECT_THROW(interpolant(alpha, -0.1), DomainError);
    EXPECT_THROW(interpolant(alpha, 1.5), DomainError);
    EXPECT_THROW(interpolant(alpha, std::nan("")), DomainError);
}

TEST(HomotopyStep, StartIsBitIdentical) {
    for (const auto& alpha : random_family(2, 30)) {
        EXPECT_TRUE(bit_identical(homotopy_step(alpha, 0.0).matrix(), alpha.matrix()));
    }
}

TEST(HomotopyStep, HandCaseEndsAtIdentity) {
    const auto end = homotopy_step(validate_injective(kHand), 1.0);
    EXPECT_LE(max_abs_diff(end.matrix(), Matrix::identity(2)), 1e-15);
}

TEST(HomotopyStep, ThreeFourFiveMidpoint) {
    const auto mid = homotopy_step(validate_injective(Matrix::from_rows({{3}, {4}})), 0.5);
    EXPECT_NEAR(mid.matrix()(0, 0), 1.8, 1e-15);
    EXPECT_NEAR(mid.matrix()(1, 0), 2.4, 1e-15);
    EXPECT_NEAR(norm2(mid.matrix().column(0)), 3.0, 1e-15);
}

TEST(HomotopyStep, EndMatchesRetract) {
    for (const auto& alpha : random_family(9, 40)) {
        EXPECT_LE(max_abs_diff(homotopy_step(alpha, 1.0).matrix(), retract(alpha).matrix()), 1e-10);
    }
}

TEST(HomotopyStep, OutOfRangeT) {
    const auto alpha = validate_injective(kHand);
    EXPECT_THROW(homotopy_step(alpha, -1e-300), DomainError);
    EXPECT_THROW(homotopy_step(alpha, 2.0), DomainError);
}

TEST(HomotopyStep, RevalidationFailureIsInternal) {
    // A tolerance no real point can satisfy forces the revalidation to fail.
    const auto alpha = validate_injective(random_with_condition(6, 3, 100.0, 8));
    EXPECT_THROW(homotopy_step(alpha, coefficient_matrix(alpha), 0.5, 0.999), InternalRankLossError);
}

TEST(SphereInterpolant, Examples) {
    const std::vector<double> unit{0.6, 0.8};
    for (double t : {0.0, 0.3, 1.0}) {
        const auto out = sphere_interpolant(unit, t);
        EXPECT_NEAR(out[0], 0.6, 1e-15);
        EXPECT_NEAR(out[1], 0.8, 1e-15);
    }
    const std::vector<double> v{3, 4};
    const auto end = sphere_interpolant(v, 1.0);
    EXPECT_NEAR(end[0], 0.6, 1e-15);
    EXPECT_NEAR(end[1], 0.8, 1e-15);
    const auto mid = sphere_interpolant(v, 0.5);
    EXPECT_NEAR(mid[0], 1.8, 1e-15);
    EXPECT_NEAR(mid[1], 2.4, 1e-15);
}

TEST(SphereInterpolant, ErrorPaths) {
    const std::vector<double> zero{0, 0, 0};
    EXPECT_THROW(sphere_interpolant(zero, 0.5), ZeroVectorError);
    const std::vector<double> tiny{1e-12, 0};
    EXPECT_THROW(sphere_interpolant(tiny, 0.5), ZeroVectorError);
    const std::vector<double> v{1, 1};
    EXPECT_THROW(sphere_interpolant(v, 1.01), DomainError);
}

TEST(SphereInterpolant, AgreesWithGeneralHomotopy) {
    Rng rng(6);
    for (int k = 0; k < 200; ++k) {
        const std::size_t m = detail::uniform_index(rng, 1, 10);
        const Matrix v = random_uniform(m, 1, rng, -10, 10);
        const double t = detail::uniform_real(rng, 0, 1);
        const auto closed = sphere_interpolant(v.column(0), t);
        const auto general = homotopy_step(validate_injective(v), t);
        for (std::size_t i = 0; i < m; ++i) {
            EXPECT_NEAR(closed[i], general.matrix()(i, 0), 1e-12);
        }
    }
}

TEST(TracePath, OrthonormalInputIsConstant) {
    const auto alpha = validate_injective(Matrix::standard_frame(4, 2));
    const auto path = trace_path(alpha, 3);
    ASSERT_EQ(path.samples.size(), 3u);
    for (const auto& s : path.samples) {
        EXPECT_EQ(s.point.matrix(), alpha.matrix());
        EXPECT_LE(s.ortho_defect, 1e-12);
        EXPECT_EQ(s.min_interpolant_diag, 1.0);
    }
}

TEST(TracePath, HandCaseEndpoints) {
    const auto path = trace_path(validate_injective(kHand), 2);
    ASSERT_EQ(path.samples.size(), 2u);
    EXPECT_EQ(path.samples[0].t, 0.0);
    EXPECT_EQ(path.samples[1].t, 1.0);
    EXPECT_EQ(path.samples[0].point.matrix(), kHand);
    EXPECT_LE(max_abs_diff(path.samples[1].point.matrix(), Matrix::identity(2)), 1e-15);
}

TEST(TracePath, RandomSeven) {
    Rng rng(7);
    const auto alpha = random_injective(4, 2, rng).map;
    const auto path = trace_path(alpha, 11);
    ASSERT_EQ(path.samples.size(), 11u);
    for (std::size_t k = 0; k < 11; ++k) {
        EXPECT_DOUBLE_EQ(path.samples[k].t, static_cast<double>(k) / 10.0);
        EXPECT_GT(path.samples[k].min_interpolant_diag, 0.0);
    }
    EXPECT_LE(path.samples.back().ortho_defect, 1e-10);
}

TEST(TracePath, NeedsTwoSamples) {
    const auto alpha = validate_injective(kHand);
    EXPECT_THROW(trace_path(alpha, 1), DomainError);
    EXPECT_THROW(trace_path(alpha, 0), DomainError);
}

TEST(TracePath, Continuity) {
    // |H(t+h) - H(t)| = h |α (M - I)| <= h d |α| |M - I| entrywise.
    for (const auto& alpha : random_family(13, 20, 16, 1e4)) {
        const auto path = trace_path(alpha, 101);
        const Matrix m_minus_i = [&] {
            Matrix out = coefficient_matrix(alpha).to_dense();
            for (std::size_t i = 0; i < out.rows(); ++i) {
                out(i, i) -= 1.0;
            }
            return out;
        }();
        const double bound = 2.0 * static_cast<double>(alpha.cols()) * max_abs(alpha.matrix()) *
                             max_abs(m_minus_i) * 0.01;
        for (std::size_t k = 1; k < path.samples.size(); ++k) {
            EXPECT_LE(max_abs_diff(path.samples[k].point.matrix(), path.samples[k - 1].point.matrix()),
                      bound);
        }
    }
}
