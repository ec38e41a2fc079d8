#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "stiefel/stiefel.hpp"
#include "stiefel/selftest.hpp"
#include "test_util.hpp"

using namespace stiefel;

namespace {

const Matrix kHand = Matrix::from_rows({{2, 1}, {0, 3}});

} // namespace

// Frozen from the long-double textbook oracle: e1 = (1,0), ẽ2 = (0,3).
TEST(Oracle, HandCaseFrozenValues) {
    const auto gs = oracle::gram_schmidt({{2, 1}, {0, 3}});
    EXPECT_EQ(gs.frame, (oracle::Rows{{1, 0}, {0, 1}}));
    EXPECT_NEAR(static_cast<double>(gs.coeffs[0][0]), 0.5, 1e-18);
    EXPECT_NEAR(static_cast<double>(gs.coeffs[0][1]), -1.0 / 6.0, 1e-18);
    EXPECT_NEAR(static_cast<double>(gs.coeffs[1][1]), 1.0 / 3.0, 1e-18);
    EXPECT_EQ(gs.coeffs[1][0], 0.0L);
    const auto inv = oracle::inverse(gs.coeffs);
    EXPECT_NEAR(static_cast<double>(inv[0][1]), 1.0, 1e-18);
}

TEST(Orthonormalize, StandardFrameIsFixed) {
    for (auto variant : {Variant::Classical, Variant::Modified}) {
        const auto alpha = validate_injective(Matrix::standard_frame(5, 3));
        const auto gs = orthonormalize(alpha, variant);
        EXPECT_EQ(gs.frame.matrix(), Matrix::standard_frame(5, 3));
        EXPECT_EQ(gs.coefficient_matrix, UpperTriangularPositive::identity(3));
        EXPECT_EQ(gs.variant_used, variant);
    }
}

TEST(Orthonormalize, HandCase) {
    for (auto variant : {Variant::Classical, Variant::Modified}) {
        const auto gs = orthonormalize(validate_injective(kHand), variant);
        EXPECT_LE(max_abs_diff(gs.frame.matrix(), Matrix::identity(2)), 1e-15);
        const Matrix expected = Matrix::from_rows({{0.5, -1.0 / 6.0}, {0, 1.0 / 3.0}});
        EXPECT_LE(max_abs_diff(gs.coefficient_matrix.to_dense(), expected), 1e-15);
        EXPECT_LE(max_abs_diff(kHand * gs.coefficient_matrix, Matrix::identity(2)), 1e-15);
        EXPECT_EQ(gs.intermediate_norms, (std::vector<double>{2.0, 3.0}));
    }
}

TEST(Orthonormalize, ThreeFourFive) {
    const auto gs = orthonormalize(validate_injective(Matrix::from_rows({{3}, {4}})));
    EXPECT_NEAR(gs.frame.matrix()(0, 0), 0.6, 1e-15);
    EXPECT_NEAR(gs.frame.matrix()(1, 0), 0.8, 1e-15);
    EXPECT_NEAR(gs.coefficient_matrix(0, 0), 0.2, 1e-16);
    EXPECT_LE(orthonormality_defect(gs.frame.matrix()), 1e-15);
}

TEST(Orthonormalize, DiagonalOfMIsInverseIntermediateNorm) {
    for (const auto& alpha : random_family(8, 50, 20)) {
        const auto gs = orthonormalize(alpha);
        for (std::size_t i = 0; i < alpha.cols(); ++i) {
            EXPECT_EQ(gs.coefficient_matrix(i, i), 1.0 / gs.intermediate_norms[i]);
        }
    }
}

TEST(Orthonormalize, AgreesWithLongDoubleOracle) {
    for (const auto& alpha : random_family(21, 40, 24, 1e4)) {
        const auto gs = orthonormalize(alpha);
        const auto ref = oracle::gram_schmidt(testutil::to_rows(alpha.matrix()));
        const double cond = alpha.condition_estimate();
        EXPECT_LE(testutil::max_gap(gs.frame.matrix(), ref.frame), 1e-13 * cond);
        const double scale = std::max(1.0, max_abs(gs.coefficient_matrix.to_dense()));
        EXPECT_LE(testutil::max_gap(gs.coefficient_matrix.to_dense(), ref.coeffs), 1e-12 * cond * scale);
    }
}

TEST(Orthonormalize, VariantsAgreeOnWellConditionedInputs) {
    for (const auto& alpha : random_family(4, 50, 32, 1e3)) {
        const auto a = orthonormalize(alpha, Variant::Classical);
        const auto b = orthonormalize(alpha, Variant::Modified);
        EXPECT_LE(max_abs_diff(a.frame.matrix(), b.frame.matrix()), 1e-8);
    }
}

TEST(Orthonormalize, ModifiedStaysOrthonormalWhenIllConditioned) {
    const auto alpha = validate_injective(random_with_condition(40, 10, 1e6, 3));
    const auto gs = orthonormalize(alpha, Variant::Modified);
    EXPECT_LE(orthonormality_defect(gs.frame.matrix()), 1e-10);
    EXPECT_LE(max_abs_diff(alpha.matrix() * gs.coefficient_matrix, gs.frame.matrix()), 1e-10);
}

TEST(Orthonormalize, InductiveReplayMatches) {
    GramSchmidtOptions opts;
    opts.replay_inductive = true;
    for (const auto& alpha : random_family(12, 30, 16, 1e4)) {
        EXPECT_NO_THROW(orthonormalize(alpha, opts));
    }
    const auto gs = orthonormalize(validate_injective(kHand), opts);
    const Matrix replay = inductive_coefficients(kHand, gs.frame.matrix(), gs.intermediate_norms);
    EXPECT_LE(max_abs_diff(replay, gs.coefficient_matrix.to_dense()), 1e-16);
}

TEST(Orthonormalize, CollapsedColumnIsNumericalRankLoss) {
    // (1,0),(1,0.1): the projected second column has norm 0.1 < 0.5 * |v2|.
    const auto alpha = validate_injective(Matrix::from_rows({{1, 1}, {0, 0.1}}));
    try {
        orthonormalize(alpha, Variant::Modified, 0.5);
        FAIL() << "expected NumericalRankLoss";
    } catch (const NumericalRankLossError& e) {
        EXPECT_EQ(e.code(), ErrorCode::NumericalRankLoss);
    }
    EXPECT_NO_THROW(orthonormalize(alpha, Variant::Modified, 0.05));
}

TEST(Orthonormalize, SignFaultIsCaught) {
    GramSchmidtOptions opts;
    opts.inject_sign_fault = true;
    const auto alpha = validate_injective(Matrix::from_rows({{1, 1}, {0, 1}, {0, 0}}));
    EXPECT_THROW(orthonormalize(alpha, opts), NotOrthonormalError);
}

TEST(Retract, FrameIsFixedPoint) {
    Rng rng(1);
    for (int k = 0; k < 20; ++k) {
        const Matrix f = householder_q(householder_factor(random_uniform(9, 4, rng)), 4);
        EXPECT_LE(max_abs_diff(retract(validate_injective(f)).matrix(), f), 1e-12);
    }
}

TEST(Retract, PositiveColumnScalingIsInvisible) {
    Rng rng(2);
    for (int k = 0; k < 20; ++k) {
        const Matrix f = householder_q(householder_factor(random_uniform(7, 3, rng)), 3);
        Matrix scaled = f;
        for (std::size_t j = 0; j < 3; ++j) {
            scale(std::exp(detail::uniform_real(rng, -5, 5)), scaled.column(j));
        }
        EXPECT_LE(max_abs_diff(retract(validate_injective(scaled)).matrix(), f), 1e-12);
    }
}

TEST(Retract, ThreeFourFive) {
    const auto f = retract(validate_injective(Matrix::from_rows({{3}, {4}})));
    EXPECT_NEAR(f.matrix()(0, 0), 0.6, 1e-15);
    EXPECT_NEAR(f.matrix()(1, 0), 0.8, 1e-15);
}

TEST(CoefficientMatrix, Examples) {
    EXPECT_EQ(coefficient_matrix(validate_injective(Matrix::identity(4))), UpperTriangularPositive::identity(4));
    for (double c : {0.25, 1.0, 7.0, 1e5}) {
        EXPECT_DOUBLE_EQ(coefficient_matrix(validate_injective(Matrix::from_rows({{c}})))(0, 0), 1.0 / c);
    }
}

TEST(CoefficientMatrix, RightInvarianceUnderUpperTriangular) {
    // M(α·U) = U⁻¹·M(α) for U upper triangular with positive diagonal.
    Rng rng(77);
    for (const auto& alpha : random_family(77, 40, 16, 1e3)) {
        const auto u = detail::random_upper(alpha.cols(), rng, 0.5, 2.0);
        const auto moved = validate_injective(alpha.matrix() * u);
        const Matrix lhs = coefficient_matrix(moved).to_dense();
        const Matrix rhs = tri_solve_inverse(u).to_dense() * coefficient_matrix(alpha);
        EXPECT_LE(max_abs_diff(lhs, rhs), 1e-9 * std::max(1.0, max_abs(rhs)));
        EXPECT_LE(max_abs_diff(retract(moved).matrix(), retract(alpha).matrix()), 1e-9);
    }
}

// --- QR -----------------------------------------------------------------------

TEST(Qr, IdentityAndHandCase) {
    const auto id = qr_decompose(validate_injective(Matrix::identity(3)));
    EXPECT_EQ(id.q.matrix(), Matrix::identity(3));
    EXPECT_EQ(id.r, UpperTriangularPositive::identity(3));

    const auto hand = qr_decompose(validate_injective(kHand));
    EXPECT_LE(max_abs_diff(hand.q.matrix(), Matrix::identity(2)), 1e-15);
    EXPECT_LE(max_abs_diff(hand.r.to_dense(), kHand), 1e-15);
}

TEST(Qr, RIsTheInverseOfM) {
    // α = Q·M⁻¹ always; α = Q·M only where M happens to equal its own inverse.
    int coincidences = 0;
    for (const auto& alpha : random_family(5, 50, 12, 1e3)) {
        if (alpha.rows() != alpha.cols()) {
            continue;
        }
        const auto qr = qr_decompose(alpha);
        const auto m = coefficient_matrix(alpha);
        EXPECT_LE(max_abs_diff(qr.q.matrix() * qr.r, alpha.matrix()), 1e-10);
        if (max_abs_diff(qr.q.matrix() * m, alpha.matrix()) <= 1e-10) {
            ++coincidences;
        }
    }
    EXPECT_EQ(coincidences, 0);
    const auto square = validate_injective(random_with_condition(6, 6, 10.0, 5));
    const auto qr = qr_decompose(square);
    EXPECT_GT(max_abs_diff(qr.q.matrix() * coefficient_matrix(square), square.matrix()), 1e-3);
}

TEST(Qr, GaussianSeed42AgainstOracles) {
    Rng rng(42);
    const Matrix a = random_gaussian(8, 8, rng);
    const auto qr = qr_decompose(validate_injective(a));
    EXPECT_LE(max_abs_diff(qr.q.matrix() * qr.r, a), 1e-10);
    EXPECT_LE(orthonormality_defect(qr.q.matrix()), 1e-10);

    const auto hh = householder_qr_oracle(a);
    EXPECT_LE(max_abs_diff(qr.q.matrix(), hh.q), 1e-10);
    EXPECT_LE(max_abs_diff(qr.r.to_dense(), hh.r), 1e-10);

    const auto ref = oracle::gram_schmidt(testutil::to_rows(a));
    EXPECT_LE(testutil::max_gap(qr.q.matrix(), ref.frame), 1e-10);
    EXPECT_LE(testutil::max_gap(qr.r.to_dense(), oracle::inverse(ref.coeffs)), 1e-10);
}

TEST(Qr, NonSquareIsRejected) {
    try {
        qr_decompose(validate_injective(Matrix::standard_frame(3, 2)));
        FAIL() << "expected DimensionError";
    } catch (const DimensionError& e) {
        EXPECT_NE(std::string(e.what()).find("qr requires a square matrix"), std::string::npos);
    }
}

TEST(HouseholderOracle, Examples) {
    const auto id = householder_qr_oracle(Matrix::identity(4));
    EXPECT_LE(max_abs_diff(id.q, Matrix::identity(4)), 1e-15);
    EXPECT_LE(max_abs_diff(id.r, Matrix::identity(4)), 1e-15);

    const auto hand = householder_qr_oracle(kHand);
    EXPECT_LE(max_abs_diff(hand.q, Matrix::identity(2)), 1e-15);
    EXPECT_LE(max_abs_diff(hand.r, kHand), 1e-15);

    const Matrix perm = Matrix::from_rows({{0, 1}, {1, 0}});
    const auto p = householder_qr_oracle(perm);
    EXPECT_LE(max_abs_diff(p.q, perm), 1e-15);
    EXPECT_LE(max_abs_diff(p.r, Matrix::identity(2)), 1e-15);
    EXPECT_LE(max_abs_diff(p.q * p.r, perm), 1e-15);

    EXPECT_THROW(householder_qr_oracle(Matrix::from_rows({{1, 2}, {2, 4}})), RankDeficientError);
    EXPECT_THROW(householder_qr_oracle(Matrix(3, 2)), DimensionError);
}
