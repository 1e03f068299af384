#pragma once

#include "cesaro/series.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace cesaro {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t default_seed = 42;

/// Polynomial of the given degree with real and imaginary parts of every
/// coefficient uniform in [-1, 1].
inline TaylorSeries random_polynomial(Rng& rng, std::size_t degree) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<complex> c(degree + 1);
    for (auto& x : c) {
        const double re = u(rng);
        x = complex{re, u(rng)};
    }
    return TaylorSeries(std::move(c));
}

}  // namespace cesaro
