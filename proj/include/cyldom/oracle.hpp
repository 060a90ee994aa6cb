#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "cyldom/cylinder.hpp"
#include "cyldom/words.hpp"

namespace cyldom {

// Brute-force ground truth. Everything here enumerates raw vertex subsets and
// stays deliberately naive; it validates the transfer machinery and must not
// share its code paths.

struct VertexSet {
    CylinderDims dims;                            // the graph the members live in
    std::vector<std::pair<int, int>> members;     // (row, column), sorted

    bool operator==(const VertexSet&) const = default;
};

// Union of closed neighborhoods under cylinder adjacency (columns wrap, rows
// do not). With outer = true the set is read as a strip of the cylinder with
// one more row below, and that row is part of the result space.
VertexSet closed_neighborhood(const VertexSet& s, bool outer);

// Every vertex of s.dims is in s or adjacent to it.
bool is_dominating(const VertexSet& s);

// 5|S| - |N[S]|, with the neighborhood taken in the outer cylinder when
// outer = true. Never negative.
int wasted_domination(const VertexSet& s, bool outer);

// Exact domination number by subset enumeration in increasing cardinality.
// Guarded at m*n <= 24.
int brute_force_gamma(const CylinderDims& dims);

struct WastedResult {
    VertexSet set; // lexicographically least witness
    int closed_neighborhood_size = 0;
    int wasted = 0;
};

// Minimum wasted domination over all subsets of the strip P_r x C_n that
// dominate its first r-1 rows, neighborhoods taken in P_{r+1} x C_n.
// Guarded at r*n <= 18.
WastedResult brute_force_wasted_min(int r, int n);

// Column labeling of a strip subset: 0 = in the set, 1 = set-neighbor in its
// own or the previous column, 2 = neither. Requires the set to dominate the
// inner rows; the inverse reads the zeros back off the words.
std::vector<CorrectWord> encode_words(const VertexSet& strip);
VertexSet decode_words(const std::vector<CorrectWord>& words);

// Test/verification helpers (still naive enumeration, guarded at r*n <= 20).
std::vector<VertexSet> enumerate_almost_dominating_sets(int r, int n);
std::uint64_t count_closed_follow_cycles(int r, int n);

// Runs the full cross-check suite for P_r x C_n (matrix-power minimum vs
// brute force, per-set neighborhood sums, cycle/set bijection, encode/decode
// round trips), printing one PASS/FAIL line per property.
bool run_verification_suite(int r, int n, std::ostream& out);

} // namespace cyldom
