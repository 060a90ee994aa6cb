#include "cyldom/tropical.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace cyldom {

namespace {

// Finite entries below kFastLimit let the kernel run branch-free: infinity is
// replaced by kClamp in a working copy, every candidate sum then fits 32 bits,
// true finite sums stay below kClamp, and anything >= kClamp maps back to
// infinity afterwards. Larger (still legal) entries fall back to the checked
// scalar kernel, which raises overflow_error when a finite sum would reach
// the sentinel.
constexpr tropical_value kClamp = tropical_value(1) << 30;
constexpr tropical_value kFastLimit = tropical_value(1) << 29;

constexpr std::size_t kJTile = 512;
constexpr std::size_t kKTile = 64;
constexpr std::size_t kRowBlock = 4;

void check_same_dim(const TropicalMatrix& a, const TropicalMatrix& b) {
    if (a.dim() == 0 || b.dim() == 0) {
        throw dimension_error("matrix is empty");
    }
    if (a.dim() != b.dim()) {
        throw dimension_error("dimension mismatch: " + std::to_string(a.dim()) +
                              " vs " + std::to_string(b.dim()));
    }
}

tropical_value max_finite(const TropicalMatrix& m) {
    tropical_value mx = 0;
    const tropical_value* p = m.data();
    const std::size_t n = m.dim() * m.dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i] != kInf && p[i] > mx) mx = p[i];
    }
    return mx;
}

// Runs fn(panel_begin, panel_end) over contiguous row panels on a small
// thread pool. Panels are claimed through an atomic cursor; every entry of
// the output is owned by exactly one panel, so scheduling cannot change the
// result.
template <typename Fn>
void parallel_row_panels(std::size_t dim, int threads, int panel_rows, Fn fn) {
    const std::size_t panel =
        panel_rows > 0 ? static_cast<std::size_t>(panel_rows)
                       : std::min<std::size_t>(64, std::max<std::size_t>(1, dim));
    const std::size_t n_panels = (dim + panel - 1) / panel;
    const int n_threads =
        std::max(1, std::min<int>(threads, static_cast<int>(n_panels)));

    if (n_threads == 1) {
        for (std::size_t pidx = 0; pidx < n_panels; ++pidx) {
            fn(pidx * panel, std::min(dim, (pidx + 1) * panel));
        }
        return;
    }

    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        try {
            while (!failed.load(std::memory_order_relaxed)) {
                std::size_t pidx = cursor.fetch_add(1);
                if (pidx >= n_panels) break;
                fn(pidx * panel, std::min(dim, (pidx + 1) * panel));
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
            failed.store(true);
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// Blocked (min,+) kernel over the clamped representation. Rows of `a` whose
// entry is infinite contribute nothing and are skipped outright, which makes
// sparse-times-dense products cheap without a separate code path.
void fast_panel(const tropical_value* __restrict a,
                const tropical_value* __restrict bp,
                tropical_value* __restrict c, std::size_t dim, std::size_t r0,
                std::size_t r1) {
    for (std::size_t j0 = 0; j0 < dim; j0 += kJTile) {
        const std::size_t j1 = std::min(j0 + kJTile, dim);
        for (std::size_t i = r0; i < r1; ++i) {
            std::fill(c + i * dim + j0, c + i * dim + j1, kInf);
        }
        for (std::size_t k0 = 0; k0 < dim; k0 += kKTile) {
            const std::size_t k1 = std::min(k0 + kKTile, dim);
            std::size_t i = r0;
            for (; i < r1; i += kRowBlock) {
                const std::size_t ib = std::min(kRowBlock, r1 - i);
                for (std::size_t k = k0; k < k1; ++k) {
                    const tropical_value* __restrict brow = bp + k * dim;
                    for (std::size_t t = 0; t < ib; ++t) {
                        const tropical_value aik = a[(i + t) * dim + k];
                        if (aik == kInf) continue; // contributes nothing
                        tropical_value* __restrict crow = c + (i + t) * dim;
                        for (std::size_t j = j0; j < j1; ++j) {
                            const tropical_value cand = aik + brow[j];
                            crow[j] = cand < crow[j] ? cand : crow[j];
                        }
                    }
                }
            }
        }
        for (std::size_t i = r0; i < r1; ++i) {
            tropical_value* crow = c + i * dim;
            for (std::size_t j = j0; j < j1; ++j) {
                if (crow[j] >= kClamp) crow[j] = kInf;
            }
        }
    }
}

// Scalar kernel with exact overflow semantics; used when entries are large
// enough that the clamped representation could not tell sums apart.
void exact_panel(const tropical_value* a, const tropical_value* b,
                 tropical_value* c, std::size_t dim, std::size_t r0,
                 std::size_t r1) {
    for (std::size_t i = r0; i < r1; ++i) {
        const tropical_value* arow = a + i * dim;
        tropical_value* crow = c + i * dim;
        std::fill(crow, crow + dim, kInf);
        for (std::size_t k = 0; k < dim; ++k) {
            const tropical_value aik = arow[k];
            if (aik == kInf) continue;
            const tropical_value* brow = b + k * dim;
            for (std::size_t j = 0; j < dim; ++j) {
                const tropical_value bkj = brow[j];
                if (bkj == kInf) continue;
                const std::uint64_t sum =
                    std::uint64_t(aik) + std::uint64_t(bkj);
                if (sum >= kInf) {
                    throw overflow_error(
                        "tropical sum " + std::to_string(sum) +
                        " reaches the infinity sentinel at entry (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
                }
                const tropical_value cand = static_cast<tropical_value>(sum);
                if (cand < crow[j]) crow[j] = cand;
            }
        }
    }
}

} // namespace

TropicalMatrix::TropicalMatrix(std::size_t dim, tropical_value fill)
    : dim_(dim), cells_(dim * dim, fill) {
    if (dim == 0) throw bounds_error("matrix dimension must be positive");
}

TropicalMatrix TropicalMatrix::identity(std::size_t dim) {
    TropicalMatrix m(dim, kInf);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 0;
    return m;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

TropicalMatrix tropical_matmul(const TropicalMatrix& a, const TropicalMatrix& b,
                               const MatmulOptions& opts) {
    check_same_dim(a, b);
    const std::size_t dim = a.dim();
    const int threads = resolve_threads(opts.threads);

    TropicalMatrix c(dim);
    c.meta_rows = (a.meta_rows == b.meta_rows) ? a.meta_rows : 0;
    c.meta_power =
        (a.meta_power != 0 && b.meta_power != 0) ? a.meta_power + b.meta_power : 0;

    const bool fast =
        max_finite(a) < kFastLimit && max_finite(b) < kFastLimit;

    if (fast) {
        // Working copy of b with infinity clamped to a finite ceiling.
        std::vector<tropical_value> packed(dim * dim);
        const tropical_value* bsrc = b.data();
        for (std::size_t idx = 0; idx < dim * dim; ++idx) {
            packed[idx] = bsrc[idx] == kInf ? kClamp : bsrc[idx];
        }
        parallel_row_panels(dim, threads, opts.panel_rows,
                            [&](std::size_t r0, std::size_t r1) {
                                fast_panel(a.data(), packed.data(), c.data(),
                                           dim, r0, r1);
                            });
    } else {
        parallel_row_panels(dim, threads, opts.panel_rows,
                            [&](std::size_t r0, std::size_t r1) {
                                exact_panel(a.data(), b.data(), c.data(), dim,
                                            r0, r1);
                            });
    }
    return c;
}

TropicalMatrix tropical_pow(const TropicalMatrix& a, std::uint64_t n,
                            const MatmulOptions& opts) {
    if (a.dim() == 0) throw dimension_error("matrix is empty");
    if (n == 0) {
        TropicalMatrix id = TropicalMatrix::identity(a.dim());
        id.meta_rows = a.meta_rows;
        return id;
    }
    TropicalMatrix base = a;
    TropicalMatrix result;
    bool have_result = false;
    std::uint64_t e = n;
    while (e > 0) {
        if (e & 1) {
            result = have_result ? tropical_matmul(result, base, opts) : base;
            have_result = true;
        }
        e >>= 1;
        if (e > 0) base = tropical_matmul(base, base, opts);
    }
    result.meta_rows = a.meta_rows;
    result.meta_power = a.meta_power != 0 ? a.meta_power * n : 0;
    return result;
}

TropicalMatrix scalar_shift(tropical_value c, const TropicalMatrix& a) {
    TropicalMatrix out = a;
    tropical_value* p = out.data();
    const std::size_t n = a.dim() * a.dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i] == kInf) continue;
        const std::uint64_t sum = std::uint64_t(p[i]) + std::uint64_t(c);
        if (sum >= kInf) {
            throw overflow_error("scalar shift by " + std::to_string(c) +
                                 " reaches the infinity sentinel");
        }
        p[i] = static_cast<tropical_value>(sum);
    }
    out.meta_power = 0; // a shifted power is no longer a power
    return out;
}

tropical_value min_diagonal(const TropicalMatrix& a) {
    tropical_value best = kInf;
    for (std::size_t i = 0; i < a.dim(); ++i) best = std::min(best, a(i, i));
    return best;
}

std::optional<tropical_value> matrix_equal_shifted(const TropicalMatrix& a,
                                                   const TropicalMatrix& b) {
    check_same_dim(a, b);
    const tropical_value* pa = a.data();
    const tropical_value* pb = b.data();
    const std::size_t n = a.dim() * a.dim();
    std::optional<tropical_value> shift;
    for (std::size_t i = 0; i < n; ++i) {
        const bool ia = pa[i] == kInf;
        const bool ib = pb[i] == kInf;
        if (ia != ib) return std::nullopt;
        if (ia) continue;
        if (!shift) {
            if (pb[i] < pa[i]) return std::nullopt;
            shift = pb[i] - pa[i];
        } else if (std::uint64_t(pa[i]) + std::uint64_t(*shift) !=
                   std::uint64_t(pb[i])) {
            return std::nullopt;
        }
    }
    return shift.value_or(0);
}

} // namespace cyldom
