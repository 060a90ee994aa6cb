#pragma once

#include <cstdint>
#include <vector>

#include "cyldom/tropical.hpp"
#include "cyldom/words.hpp"

namespace cyldom {

// Where a newly dominated cell sits relative to the column being appended.
enum class NdOffset : std::uint8_t {
    prev,  // the column before the new one
    self,  // the new column itself
    next,  // the column after the new one
    below, // the extra row under the strip (outer cylinder)
};

struct NdCell {
    int row;
    NdOffset offset;
    bool operator==(const NdCell&) const = default;
};

struct NewlyDominatedResult {
    int count = 0;
    std::vector<NdCell> cells;
};

// Whether column state p may appear immediately after column state q.
// q is the existing column (y), p the candidate next column (x):
//   1. y_i = 0 forbids x_i = 2;
//   2. y_i = 1 with x_i = 1 needs a 0 beside x_i (only the neighbor that
//      exists is consulted at the first and last row);
//   3. y_i = 2 in any row but the last forces x_i = 0;
//   4. y_{r-1} = 2 with x_{r-1} = 1 needs x_{r-2} = 0.
bool can_follow(const CorrectWord& q, const CorrectWord& p);

// Count (and identify) the vertices first covered when column p is appended
// after column q. Defined only on arcs of the follow relation.
NewlyDominatedResult newly_dominated(const CorrectWord& q, const CorrectWord& p);

// 5 * zeros(p) - newly_dominated(q, p).count; never negative.
tropical_value arc_label(const CorrectWord& q, const CorrectWord& p);

// Largest word length the dense transfer matrix accepts.
inline constexpr int kMaxTransferRows = 13;

// The follow digraph's labeled adjacency matrix over the word table of
// length r: entry (i, j) labels the arc word(i) -> word(j), infinity where
// the relation does not hold. Rows may be filled in parallel; the result is
// the same either way.
TropicalMatrix build_transfer_matrix(int r, int threads = 0);

} // namespace cyldom
