#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyldom/cylinder.hpp"
#include "cyldom/scan.hpp"

namespace cyldom {

// Cycle lengths for which the minimum border waste is n+1 instead of n.
bool is_exceptional_cycle_length(std::uint64_t n);

// ceil((2 L(n) + m n) / 5); the two border strips of depth `table.rows` must
// fit disjointly, so m >= 2 * rows.
std::int64_t lower_bound_from_L(const CylinderDims& dims, const LTable& table);

// Closed form of the same bound for the depth-10 border: m >= 20, n >= 30.
std::int64_t theorem_bound(const CylinderDims& dims);

struct ConstructionBound {
    std::int64_t value = 0;
    bool rounded = false; // the closed form was fractional and got rounded up
};

// Pattern-based upper bound, five branches by n mod 5; requires m >= n.
ConstructionBound construction_upper_bound(const CylinderDims& dims);

// floor((m+2)(n+2)/5) - 4, valid for m, n >= 16 (grid dominating sets also
// dominate the cylinder).
std::int64_t grid_upper_bound(const CylinderDims& dims);

// floor((m+2) n / 5) - 4, valid for m, n >= 18 (delete two columns to get a
// grid).
std::int64_t grid_lower_bound(const CylinderDims& dims);

// Exact domination numbers for 16 <= m <= 22, n >= m, encoded as
// ceil((m+2) n / 5) plus a residue-dependent offset.
std::optional<std::int64_t> known_gamma(const CylinderDims& dims);

struct BoundReport {
    CylinderDims dims;
    int residue = 0; // n mod 5
    int k = 0;       // floor(n / 5)
    std::optional<std::int64_t> lower_new;
    std::optional<std::int64_t> lower_grid;
    std::optional<std::int64_t> upper_construction;
    std::optional<std::int64_t> upper_grid;
    std::optional<std::int64_t> known_gamma;
    std::vector<std::string> flags;
};

// Evaluates every bound whose domain covers dims; ltable (optional) supplies
// lower_bound_from_L, otherwise the closed form is used where it applies.
BoundReport make_bound_report(const CylinderDims& dims, const LTable* ltable);

// JSON object with keys m, n, residue, k, lower_new, lower_grid,
// upper_construction, upper_grid, known_gamma, flags (nulls where a bound
// does not apply). Stable key order.
std::string bound_report_json(const BoundReport& report);

// A dominating set of P_m x C_n with exactly (m+2) n / 5 vertices for
// n = 0 (mod 5): the period-5 diagonal pattern plus one adjustment row along
// each border. The result is re-verified before being returned.
std::vector<std::pair<int, int>> diagonal_pattern_dominating_set(
    const CylinderDims& dims);

} // namespace cyldom
