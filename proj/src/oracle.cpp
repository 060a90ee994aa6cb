#include "cyldom/oracle.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <string>

#include "cyldom/transfer.hpp"
#include "cyldom/tropical.hpp"

namespace cyldom {

namespace {

void check_strip(int rows, int n, const char* what) {
    if (rows < 1) throw bounds_error(std::string(what) + ": rows must be >= 1");
    if (n < 3) throw bounds_error(std::string(what) + ": cycle length must be >= 3");
}

void check_members(const VertexSet& s) {
    for (const auto& [i, j] : s.members) {
        if (i < 0 || i >= s.dims.m || j < 0 || j >= s.dims.n) {
            throw bounds_error("vertex (" + std::to_string(i) + "," +
                               std::to_string(j) + ") outside P_" +
                               std::to_string(s.dims.m) + " x C_" +
                               std::to_string(s.dims.n));
        }
    }
}

// Closed neighborhood of vertex (i, j) as a bitmask over a rows x n grid with
// wrapped columns; bits are i*n + j.
std::uint64_t closed_mask(int i, int j, int rows, int n) {
    std::uint64_t m = std::uint64_t(1) << (i * n + j);
    m |= std::uint64_t(1) << (i * n + (j + 1) % n);
    m |= std::uint64_t(1) << (i * n + (j + n - 1) % n);
    if (i > 0) m |= std::uint64_t(1) << ((i - 1) * n + j);
    if (i + 1 < rows) m |= std::uint64_t(1) << ((i + 1) * n + j);
    return m;
}

// Vertex-sequence lexicographic order on subsets encoded as bitmasks.
bool mask_lex_less(std::uint32_t a, std::uint32_t b) {
    while (a != 0 && b != 0) {
        const int la = std::countr_zero(a);
        const int lb = std::countr_zero(b);
        if (la != lb) return la < lb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

std::vector<std::pair<int, int>> mask_to_vertices(std::uint64_t mask, int n) {
    std::vector<std::pair<int, int>> out;
    while (mask != 0) {
        const int b = std::countr_zero(mask);
        out.emplace_back(b / n, b % n);
        mask &= mask - 1;
    }
    return out;
}

// Whether mask (a subset of the r x n strip) dominates the first r-1 rows
// within the strip itself.
bool dominates_inner(std::uint32_t mask, const std::vector<std::uint32_t>& strip_cover,
                     int inner_count) {
    for (int v = 0; v < inner_count; ++v) {
        if ((strip_cover[v] & mask) == 0) return false;
    }
    return true;
}

std::vector<std::uint32_t> strip_cover_table(int r, int n) {
    std::vector<std::uint32_t> cover(static_cast<std::size_t>(r) * n);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < n; ++j) {
            cover[i * n + j] = static_cast<std::uint32_t>(closed_mask(i, j, r, n));
        }
    }
    return cover;
}

} // namespace

VertexSet closed_neighborhood(const VertexSet& s, bool outer) {
    check_strip(s.dims.m, s.dims.n, "closed_neighborhood");
    check_members(s);
    const int rows = s.dims.m + (outer ? 1 : 0);
    const int n = s.dims.n;
    std::vector<char> mark(static_cast<std::size_t>(rows) * n, 0);
    for (const auto& [i, j] : s.members) {
        mark[i * n + j] = 1;
        mark[i * n + (j + 1) % n] = 1;
        mark[i * n + (j + n - 1) % n] = 1;
        if (i > 0) mark[(i - 1) * n + j] = 1;
        if (i + 1 < rows) mark[(i + 1) * n + j] = 1;
    }
    VertexSet out;
    out.dims = {rows, n};
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < n; ++j) {
            if (mark[i * n + j]) out.members.emplace_back(i, j);
        }
    }
    return out;
}

bool is_dominating(const VertexSet& s) {
    check_strip(s.dims.m, s.dims.n, "is_dominating");
    check_members(s);
    return closed_neighborhood(s, false).members.size() ==
           static_cast<std::size_t>(s.dims.m) * s.dims.n;
}

int wasted_domination(const VertexSet& s, bool outer) {
    return 5 * static_cast<int>(s.members.size()) -
           static_cast<int>(closed_neighborhood(s, outer).members.size());
}

int brute_force_gamma(const CylinderDims& dims) {
    check_cylinder(dims);
    const int mn = dims.m * dims.n;
    if (mn > 24) {
        throw bounds_error("brute-force gamma is guarded at m*n <= 24, got " +
                           std::to_string(mn));
    }
    const int n = dims.n;
    std::vector<std::uint32_t> cover(mn);
    for (int i = 0; i < dims.m; ++i) {
        for (int j = 0; j < n; ++j) {
            cover[i * n + j] =
                static_cast<std::uint32_t>(closed_mask(i, j, dims.m, n));
        }
    }
    const std::uint32_t full = (std::uint32_t(1) << mn) - 1;
    const std::uint32_t limit = std::uint32_t(1) << mn;
    for (int c = 1; c <= mn; ++c) {
        std::uint32_t mask = (std::uint32_t(1) << c) - 1;
        while (mask < limit) {
            std::uint32_t covered = 0;
            std::uint32_t mm = mask;
            while (mm != 0) {
                covered |= cover[std::countr_zero(mm)];
                mm &= mm - 1;
            }
            if (covered == full) return c;
            // Gosper's hack: next mask with c bits
            const std::uint32_t lo = mask & (0u - mask);
            const std::uint32_t carry = mask + lo;
            if (carry == 0) break;
            mask = (((mask ^ carry) >> 2) / lo) | carry;
        }
    }
    return mn; // the full vertex set always dominates
}

WastedResult brute_force_wasted_min(int r, int n) {
    check_strip(r, n, "brute_force_wasted_min");
    if (r < 2) throw bounds_error("brute_force_wasted_min needs r >= 2");
    if (r * n > 18) {
        throw bounds_error("brute-force wasted minimum is guarded at r*n <= 18, got " +
                           std::to_string(r * n));
    }
    const int strip = r * n;
    const int inner_count = (r - 1) * n;
    const std::vector<std::uint32_t> strip_cover = strip_cover_table(r, n);
    std::vector<std::uint64_t> outer_cover(strip);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < n; ++j) {
            outer_cover[i * n + j] = closed_mask(i, j, r + 1, n);
        }
    }

    int best_w = -1;
    std::uint32_t best_mask = 0;
    std::uint64_t best_nbhd = 0;
    const std::uint32_t limit = std::uint32_t(1) << strip;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (!dominates_inner(mask, strip_cover, inner_count)) continue;
        std::uint64_t nbhd = 0;
        std::uint32_t mm = mask;
        while (mm != 0) {
            nbhd |= outer_cover[std::countr_zero(mm)];
            mm &= mm - 1;
        }
        const int w = 5 * std::popcount(mask) - std::popcount(nbhd);
        if (best_w < 0 || w < best_w ||
            (w == best_w && mask_lex_less(mask, best_mask))) {
            best_w = w;
            best_mask = mask;
            best_nbhd = nbhd;
        }
    }

    WastedResult result;
    result.set.dims = {r, n};
    result.set.members = mask_to_vertices(best_mask, n);
    result.closed_neighborhood_size = std::popcount(best_nbhd);
    result.wasted = best_w;
    return result;
}

std::vector<CorrectWord> encode_words(const VertexSet& strip) {
    const int r = strip.dims.m;
    const int n = strip.dims.n;
    check_strip(r, n, "encode_words");
    if (r < 2) throw bounds_error("encode_words needs a strip with r >= 2 rows");
    check_members(strip);

    std::vector<char> in_set(static_cast<std::size_t>(r) * n, 0);
    for (const auto& [i, j] : strip.members) in_set[i * n + j] = 1;

    auto member = [&](int i, int j) {
        return i >= 0 && i < r && in_set[i * n + ((j % n) + n) % n] != 0;
    };

    // Inner rows must be dominated within the strip.
    for (int i = 0; i + 1 < r; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!(member(i, j) || member(i - 1, j) || member(i + 1, j) ||
                  member(i, j - 1) || member(i, j + 1))) {
                throw encoding_error("set is not almost-dominating: vertex (" +
                                     std::to_string(i) + "," + std::to_string(j) +
                                     ") in column " + std::to_string(j) +
                                     " is uncovered");
            }
        }
    }

    std::vector<CorrectWord> words;
    words.reserve(n);
    std::vector<std::uint8_t> digits(r);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < r; ++i) {
            if (member(i, j)) {
                digits[i] = 0;
            } else if (member(i - 1, j) || member(i + 1, j) || member(i, j - 1)) {
                digits[i] = 1;
            } else {
                digits[i] = 2;
            }
        }
        words.push_back(CorrectWord::from_digits(digits));
    }
    return words;
}

VertexSet decode_words(const std::vector<CorrectWord>& words) {
    const int n = static_cast<int>(words.size());
    if (n < 3) throw bounds_error("decode_words needs at least 3 columns");
    const int r = words[0].length();
    for (const auto& w : words) {
        if (w.length() != r) {
            throw dimension_error("decode_words: mixed word lengths");
        }
    }
    for (int j = 0; j < n; ++j) {
        const int jn = (j + 1) % n;
        if (!can_follow(words[j], words[jn])) {
            throw encoding_error("column " + std::to_string(jn) +
                                 " cannot follow column " + std::to_string(j));
        }
    }
    VertexSet out;
    out.dims = {r, n};
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < n; ++j) {
            if (words[j].digit(i) == 0) out.members.emplace_back(i, j);
        }
    }
    return out;
}

std::vector<VertexSet> enumerate_almost_dominating_sets(int r, int n) {
    check_strip(r, n, "enumerate_almost_dominating_sets");
    if (r < 2) throw bounds_error("almost-dominating sets need r >= 2");
    if (r * n > 20) {
        throw bounds_error("enumeration is guarded at r*n <= 20, got " +
                           std::to_string(r * n));
    }
    const int inner_count = (r - 1) * n;
    const std::vector<std::uint32_t> strip_cover = strip_cover_table(r, n);
    std::vector<VertexSet> out;
    const std::uint32_t limit = std::uint32_t(1) << (r * n);
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (!dominates_inner(mask, strip_cover, inner_count)) continue;
        VertexSet s;
        s.dims = {r, n};
        s.members = mask_to_vertices(mask, n);
        out.push_back(std::move(s));
    }
    return out;
}

std::uint64_t count_closed_follow_cycles(int r, int n) {
    check_strip(r, n, "count_closed_follow_cycles");
    if (r < 2 || r * n > 20) {
        throw bounds_error("cycle counting is guarded at r >= 2 and r*n <= 20");
    }
    const WordTable table = enumerate_correct_words(r);
    const std::size_t s = table.size();
    using Count = unsigned __int128;
    std::vector<Count> adj(s * s, 0);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            if (can_follow(table.word(i), table.word(j))) adj[i * s + j] = 1;
        }
    }
    std::vector<Count> power = adj;
    std::vector<Count> next(s * s);
    for (int step = 2; step <= n; ++step) {
        std::fill(next.begin(), next.end(), Count(0));
        for (std::size_t i = 0; i < s; ++i) {
            for (std::size_t k = 0; k < s; ++k) {
                const Count v = power[i * s + k];
                if (v == 0) continue;
                for (std::size_t j = 0; j < s; ++j) {
                    next[i * s + j] += v * adj[k * s + j];
                }
            }
        }
        power.swap(next);
    }
    Count trace = 0;
    for (std::size_t i = 0; i < s; ++i) trace += power[i * s + i];
    return static_cast<std::uint64_t>(trace);
}

bool run_verification_suite(int r, int n, std::ostream& out) {
    bool all_ok = true;
    auto report = [&](const char* name, bool ok, const std::string& detail) {
        out << (ok ? "PASS " : "FAIL ") << name;
        if (!ok && !detail.empty()) out << " (" << detail << ")";
        out << '\n';
        all_ok = all_ok && ok;
    };

    const TropicalMatrix a = build_transfer_matrix(r);
    const TropicalMatrix an = tropical_pow(a, static_cast<std::uint64_t>(n));
    const WastedResult brute = brute_force_wasted_min(r, n);
    const tropical_value diag = min_diagonal(an);
    report("matrix-power minimum equals brute-force minimum",
           diag != kInf && static_cast<int>(diag) == brute.wasted,
           "diagonal " + std::to_string(diag) + " vs brute " +
               std::to_string(brute.wasted));

    const std::vector<VertexSet> sets = enumerate_almost_dominating_sets(r, n);

    bool nd_ok = true, walk_ok = true, round_ok = true;
    std::string nd_detail, walk_detail, round_detail;
    for (const VertexSet& set : sets) {
        const std::vector<CorrectWord> words = encode_words(set);
        const std::size_t nbhd =
            closed_neighborhood(set, /*outer=*/true).members.size();
        long long nd_sum = 0;
        long long label_sum = 0;
        for (int j = 0; j < n; ++j) {
            const CorrectWord& q = words[j];
            const CorrectWord& p = words[(j + 1) % n];
            nd_sum += newly_dominated(q, p).count;
            label_sum += arc_label(q, p);
        }
        if (nd_ok && nd_sum != static_cast<long long>(nbhd)) {
            nd_ok = false;
            nd_detail = "set of size " + std::to_string(set.members.size()) +
                        ": nd sum " + std::to_string(nd_sum) + " vs |N[R]| " +
                        std::to_string(nbhd);
        }
        const int w = 5 * static_cast<int>(set.members.size()) -
                      static_cast<int>(nbhd);
        if (walk_ok && label_sum != w) {
            walk_ok = false;
            walk_detail = "labels " + std::to_string(label_sum) + " vs wasted " +
                          std::to_string(w);
        }
        if (round_ok && !(decode_words(words) == set)) {
            round_ok = false;
            round_detail = "decode(encode(R)) != R";
        }
    }
    report("neighborhood size equals nd sum", nd_ok, nd_detail);
    report("walk labels equal wasted domination", walk_ok, walk_detail);
    report("encode/decode round trip", round_ok, round_detail);

    const std::uint64_t cycles = count_closed_follow_cycles(r, n);
    report("closed cycle count equals almost-dominating set count",
           cycles == sets.size(),
           std::to_string(cycles) + " vs " + std::to_string(sets.size()));

    return all_ok;
}

} // namespace cyldom
