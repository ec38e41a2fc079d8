#ifndef STIEFEL_RANDOM_HPP
#define STIEFEL_RANDOM_HPP

#include <cstdint>
#include <random>

#include "stiefel/error.hpp"
#include "stiefel/matrix.hpp"
#include "stiefel/types.hpp"

namespace stiefel {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; gives well-separated streams for (seed, index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline Matrix random_uniform(std::size_t rows, std::size_t cols, Rng& rng, double lo = -1.0,
                             double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Matrix out(rows, cols);
    for (double& v : out.data()) {
        v = dist(rng);
    }
    return out;
}

inline Matrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix out(rows, cols);
    for (double& v : out.data()) {
        v = dist(rng);
    }
    return out;
}

struct GeneratedMap {
    InjectiveMap map;
    std::size_t resamples;
};

/// Uniform [-1, 1] entries, redrawn until validation passes and the
/// condition estimate is at most `max_condition`.
inline GeneratedMap random_injective(std::size_t m, std::size_t d, Rng& rng,
                                     double max_condition = 1e6,
                                     double tol_rank = kDefaultRankTol,
                                     std::size_t max_attempts = 1000) {
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        try {
            auto map = validate_injective(random_uniform(m, d, rng), tol_rank);
            if (map.condition_estimate() <= max_condition) {
                return {std::move(map), attempt};
            }
        } catch (const RankDeficientError&) {
        }
    }
    throw RankDeficientError("no acceptable random matrix after " + std::to_string(max_attempts) +
                                 " attempts",
                             0.0);
}

} // namespace stiefel

#endif // STIEFEL_RANDOM_HPP
