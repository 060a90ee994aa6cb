#include "cyldom/transfer.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace cyldom {

namespace {

void check_pair(const CorrectWord& q, const CorrectWord& p) {
    if (q.length() != p.length()) {
        throw dimension_error("word lengths differ: " +
                              std::to_string(q.length()) + " vs " +
                              std::to_string(p.length()));
    }
    if (q.length() < 2) {
        throw bounds_error("follow relation needs word length >= 2");
    }
}

bool can_follow_raw(const std::uint8_t* y, const std::uint8_t* x, int r) {
    for (int i = 0; i < r; ++i) {
        switch (y[i]) {
        case 0:
            if (x[i] == 2) return false;
            break;
        case 1:
            if (x[i] == 1) {
                const bool left = i > 0 && x[i - 1] == 0;
                const bool right = i + 1 < r && x[i + 1] == 0;
                if (!left && !right) return false;
            }
            break;
        case 2:
            if (i <= r - 2) {
                if (x[i] != 0) return false;
            } else { // last row: undominated is allowed, but a 1 needs a witness above
                if (x[i] == 1 && x[i - 1] != 0) return false;
            }
            break;
        }
    }
    return true;
}

// The five counting steps; cells collected only when asked for.
int nd_raw(const std::uint8_t* q, const std::uint8_t* p, int r,
           std::vector<NdCell>* cells) {
    int nd = 0;
    for (int i = 0; i < r; ++i) {
        if (p[i] == 0 && q[i] == 2) {
            ++nd;
            if (cells) cells->push_back({i, NdOffset::prev});
        }
    }
    for (int i = 0; i < r; ++i) {
        if (p[i] <= 1 && q[i] >= 1) {
            ++nd;
            if (cells) cells->push_back({i, NdOffset::self});
        }
    }
    for (int i = 0; i < r; ++i) {
        if (p[i] == 0) {
            ++nd;
            if (cells) cells->push_back({i, NdOffset::next});
        }
    }
    if (p[r - 1] == 0) {
        ++nd;
        if (cells) cells->push_back({r - 1, NdOffset::below});
    }
    return nd;
}

void unpack(const CorrectWord& w, std::uint8_t* out) {
    for (int i = 0; i < w.length(); ++i) out[i] = w.digit(i);
}

} // namespace

bool can_follow(const CorrectWord& q, const CorrectWord& p) {
    check_pair(q, p);
    std::uint8_t y[kMaxWordLength], x[kMaxWordLength];
    unpack(q, y);
    unpack(p, x);
    return can_follow_raw(y, x, q.length());
}

NewlyDominatedResult newly_dominated(const CorrectWord& q, const CorrectWord& p) {
    check_pair(q, p);
    std::uint8_t y[kMaxWordLength], x[kMaxWordLength];
    unpack(q, y);
    unpack(p, x);
    const int r = q.length();
    if (!can_follow_raw(y, x, r)) {
        throw relation_error("newly_dominated is undefined: " + p.str() +
                             " cannot follow " + q.str());
    }
    NewlyDominatedResult result;
    result.count = nd_raw(y, x, r, &result.cells);
    return result;
}

tropical_value arc_label(const CorrectWord& q, const CorrectWord& p) {
    check_pair(q, p);
    std::uint8_t y[kMaxWordLength], x[kMaxWordLength];
    unpack(q, y);
    unpack(p, x);
    const int r = q.length();
    if (!can_follow_raw(y, x, r)) {
        throw relation_error("arc_label is undefined: " + p.str() +
                             " cannot follow " + q.str());
    }
    return static_cast<tropical_value>(5 * p.zeros() - nd_raw(y, x, r, nullptr));
}

TropicalMatrix build_transfer_matrix(int r, int threads) {
    if (r < 2 || r > kMaxTransferRows) {
        const std::uint64_t alpha =
            (r >= 1 && r <= 50) ? count_correct_words(r) : 0;
        std::string msg = "transfer matrix needs 2 <= rows <= " +
                          std::to_string(kMaxTransferRows) + ", got " +
                          std::to_string(r);
        if (alpha > 0) {
            const double gib =
                double(alpha) * double(alpha) * sizeof(tropical_value) /
                (1024.0 * 1024.0 * 1024.0);
            msg += " (dense storage would need " + std::to_string(alpha) + "^2 entries, ~" +
                   std::to_string(gib) + " GiB)";
        }
        throw bounds_error(msg);
    }

    const WordTable table = enumerate_correct_words(r);
    const std::size_t n = table.size();

    std::vector<std::uint8_t> digits(n * static_cast<std::size_t>(r));
    std::vector<std::uint8_t> zero_count(n);
    for (std::size_t i = 0; i < n; ++i) {
        unpack(table.word(i), digits.data() + i * r);
        zero_count[i] = static_cast<std::uint8_t>(table.word(i).zeros());
    }

    TropicalMatrix a(n);
    a.meta_rows = static_cast<std::uint32_t>(r);
    a.meta_power = 1;

    const int n_threads = resolve_threads(threads);
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        constexpr std::size_t kChunk = 64;
        while (true) {
            const std::size_t begin = cursor.fetch_add(kChunk);
            if (begin >= n) break;
            const std::size_t end = std::min(n, begin + kChunk);
            for (std::size_t i = begin; i < end; ++i) {
                const std::uint8_t* y = digits.data() + i * r;
                for (std::size_t j = 0; j < n; ++j) {
                    const std::uint8_t* x = digits.data() + j * r;
                    if (can_follow_raw(y, x, r)) {
                        a(i, j) = static_cast<tropical_value>(
                            5 * zero_count[j] - nd_raw(y, x, r, nullptr));
                    }
                }
            }
        }
    };

    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return a;
}

} // namespace cyldom
