#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "cyldom/errors.hpp"

namespace cyldom {

// Entries live in the (min,+) semiring over nonnegative 32-bit integers.
// The all-ones value is the absorbing infinity; a finite sum that would reach
// it raises overflow_error instead of saturating silently.
using tropical_value = std::uint32_t;
inline constexpr tropical_value kInf = 0xFFFFFFFFu;

class TropicalMatrix {
public:
    TropicalMatrix() = default;
    explicit TropicalMatrix(std::size_t dim, tropical_value fill = kInf);

    // 0 on the diagonal, infinity elsewhere: the multiplicative identity.
    static TropicalMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    tropical_value operator()(std::size_t i, std::size_t j) const {
        return cells_[i * dim_ + j];
    }
    tropical_value& operator()(std::size_t i, std::size_t j) {
        return cells_[i * dim_ + j];
    }
    const tropical_value* data() const { return cells_.data(); }
    tropical_value* data() { return cells_.data(); }

    // Entrywise comparison; provenance metadata is not part of equality.
    bool operator==(const TropicalMatrix& other) const {
        return dim_ == other.dim_ && cells_ == other.cells_;
    }

    // Provenance carried through .tmx files: the transfer word length and
    // which power of the base matrix this is. 0 means absent.
    std::uint32_t meta_rows = 0;
    std::uint64_t meta_power = 0;

private:
    std::size_t dim_ = 0;
    std::vector<tropical_value> cells_;
};

struct MatmulOptions {
    int threads = 0;     // 0: hardware concurrency
    int panel_rows = 0;  // rows per parallel work unit, 0: default; output is
                         // bit-identical for every setting
};

// c[i][j] = min_k (a[i][k] + b[k][j])
TropicalMatrix tropical_matmul(const TropicalMatrix& a, const TropicalMatrix& b,
                               const MatmulOptions& opts = {});

// a^n by repeated squaring (n >= 0; n == 0 yields the identity).
TropicalMatrix tropical_pow(const TropicalMatrix& a, std::uint64_t n,
                            const MatmulOptions& opts = {});

// Adds c to every finite entry; infinity stays put.
TropicalMatrix scalar_shift(tropical_value c, const TropicalMatrix& a);

// Minimum over the diagonal; infinity when every diagonal entry is infinite.
tropical_value min_diagonal(const TropicalMatrix& a);

// If b == c (+) a entrywise for some nonnegative c (with matching infinity
// positions), returns c; otherwise nullopt.
std::optional<tropical_value> matrix_equal_shifted(const TropicalMatrix& a,
                                                   const TropicalMatrix& b);

// .tmx persistence, little-endian:
//   magic "TMX1" | version u32 | dim u32 | entry width u32 (= 4) | flags u32
//   | meta rows u32 (0 if absent) | meta power u64 (0 if absent)
//   | dim*dim entries row-major | CRC32 of the payload bytes
// Infinity is stored as the all-ones entry. Round-trips are bit-exact.
void write_matrix(const TropicalMatrix& a, const std::filesystem::path& path);
TropicalMatrix read_matrix(const std::filesystem::path& path);

int resolve_threads(int requested);

} // namespace cyldom
