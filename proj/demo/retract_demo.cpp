// Walks a small example through the library: retraction, coefficient
// matrix, the straight-line homotopy to the frame, QR, and a rotation check.

#include <array>
#include <cstdio>

#include "stiefel/stiefel.hpp"

namespace {

void print(const char* label, const stiefel::Matrix& a) {
    std::printf("%s\n", label);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::printf("  ");
        for (std::size_t j = 0; j < a.cols(); ++j) {
            std::printf("% .6f ", a(i, j));
        }
        std::printf("\n");
    }
}

} // namespace

int main() {
    using namespace stiefel;

    const auto alpha = validate_injective(Matrix::from_rows({{2, 1}, {0, 3}, {1, 1}}));
    std::printf("condition estimate %.4f\n", alpha.condition_estimate());

    const auto gs = orthonormalize(alpha);
    print("frame", gs.frame.matrix());
    print("M(alpha)", gs.coefficient_matrix.to_dense());

    for (const auto& s : trace_path(alpha, 5).samples) {
        std::printf("t=%.2f  min diag %.4f  |QtQ - I| %.2e\n", s.t, s.min_interpolant_diag,
                    s.ortho_defect);
    }

    const auto qr = qr_decompose(validate_injective(Matrix::from_rows({{2, 1}, {0, 3}})));
    print("Q", qr.q.matrix());
    print("R", qr.r.to_dense());

    const std::array<double, 3> ts{0.0, 0.5, 1.0};
    const auto report = check_equivariance(alpha, random_rotation(3, 7), ts, 1e-12);
    std::printf("equivariance max defect %.2e (%s)\n", report.max_defect(),
                report.passed ? "ok" : "FAILED");
    return report.passed ? 0 : 1;
}
