#pragma once

// Reference implementations used only by tests. They stay deliberately
// simple and independent of the library's kernels.

#include <cstdint>
#include <random>

#include "cyldom/tropical.hpp"

namespace cyldom::testing {

// Plain triple loop with explicit infinity handling.
inline TropicalMatrix naive_matmul(const TropicalMatrix& a,
                                   const TropicalMatrix& b) {
    const std::size_t dim = a.dim();
    TropicalMatrix c(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            std::uint64_t best = kInf;
            for (std::size_t k = 0; k < dim; ++k) {
                const tropical_value x = a(i, k);
                const tropical_value y = b(k, j);
                if (x == kInf || y == kInf) continue;
                const std::uint64_t sum = std::uint64_t(x) + std::uint64_t(y);
                if (sum >= kInf) {
                    throw overflow_error("naive kernel: finite sum reaches the sentinel");
                }
                if (sum < best) best = sum;
            }
            c(i, j) = static_cast<tropical_value>(best);
        }
    }
    return c;
}

inline TropicalMatrix random_matrix(std::mt19937& rng, std::size_t dim,
                                    double inf_density,
                                    tropical_value max_value) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<tropical_value> value(0, max_value);
    TropicalMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            m(i, j) = coin(rng) < inf_density ? kInf : value(rng);
        }
    }
    return m;
}

// Minimum label over all walks of exactly k arcs from i to j, by full
// enumeration. Returns kInf (as 64-bit) when no such walk exists.
inline std::uint64_t min_walk_label(const TropicalMatrix& a, std::size_t i,
                                    std::size_t j, int k) {
    if (k == 0) return i == j ? 0 : std::uint64_t(kInf);
    std::uint64_t best = kInf;
    for (std::size_t mid = 0; mid < a.dim(); ++mid) {
        if (a(i, mid) == kInf) continue;
        const std::uint64_t rest = min_walk_label(a, mid, j, k - 1);
        if (rest == kInf) continue;
        best = std::min(best, std::uint64_t(a(i, mid)) + rest);
    }
    return best;
}

} // namespace cyldom::testing
