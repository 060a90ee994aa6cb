#include "cyldom/bounds.hpp"

#include <algorithm>
#include <array>

#include "json.hpp"

#include "cyldom/oracle.hpp"

namespace cyldom {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    return (a + b - 1) / b; // a >= 0, b > 0
}

constexpr std::array<std::uint64_t, 11> kExceptional = {32, 33, 37, 38, 42,
                                                        43, 47, 48, 53, 58, 63};

// Offsets added to ceil((m+2) n / 5) per n mod 5, for m = 16..22.
constexpr std::array<std::array<int, 5>, 7> kKnownGammaOffsets = {{
    {0, 0, 0, 1, 0}, // m = 16
    {0, 1, 0, 1, 0}, // m = 17
    {0, 1, 1, 1, 1}, // m = 18
    {0, 0, 0, 1, 1}, // m = 19
    {0, 1, 1, 1, 1}, // m = 20
    {0, 1, 0, 2, 1}, // m = 21
    {0, 1, 1, 2, 1}, // m = 22
}};

} // namespace

bool is_exceptional_cycle_length(std::uint64_t n) {
    return std::find(kExceptional.begin(), kExceptional.end(), n) !=
           kExceptional.end();
}

std::int64_t lower_bound_from_L(const CylinderDims& dims, const LTable& table) {
    check_cylinder(dims);
    if (dims.m < 2 * table.rows) {
        throw bounds_error("both border strips of depth " +
                           std::to_string(table.rows) +
                           " must fit disjointly: need m >= " +
                           std::to_string(2 * table.rows) + ", got m = " +
                           std::to_string(dims.m));
    }
    const std::uint64_t l = table.at(static_cast<std::uint64_t>(dims.n));
    return ceil_div(2 * static_cast<std::int64_t>(l) +
                        std::int64_t(dims.m) * dims.n,
                    5);
}

std::int64_t theorem_bound(const CylinderDims& dims) {
    check_cylinder(dims);
    if (dims.m < 20 || dims.n < 30) {
        throw bounds_error("the closed-form lower bound needs m >= 20 and n >= 30");
    }
    const std::int64_t base = std::int64_t(dims.n) * (dims.m + 2);
    return is_exceptional_cycle_length(static_cast<std::uint64_t>(dims.n))
               ? ceil_div(base + 2, 5)
               : ceil_div(base, 5);
}

ConstructionBound construction_upper_bound(const CylinderDims& dims) {
    check_cylinder(dims);
    if (dims.m < dims.n) {
        throw bounds_error("the pattern construction needs m >= n");
    }
    const std::int64_t m2 = dims.m + 2;
    const std::int64_t k = dims.n / 5;
    std::int64_t num = 0;
    std::int64_t den = 1;
    switch (dims.n % 5) {
    case 0: num = m2 * k; break;
    case 1: num = m2 * (8 * k + 3); den = 8; break;
    case 2: num = m2 * (2 * k + 1); den = 2; break;
    case 3: num = m2 * (k + 1); break;
    case 4: num = m2 * (k + 1); break;
    }
    ConstructionBound out;
    out.rounded = (num % den) != 0;
    out.value = ceil_div(num, den);
    return out;
}

std::int64_t grid_upper_bound(const CylinderDims& dims) {
    check_cylinder(dims);
    if (dims.m < 16 || dims.n < 16) {
        throw bounds_error("the grid upper bound needs m, n >= 16");
    }
    return (std::int64_t(dims.m + 2) * (dims.n + 2)) / 5 - 4;
}

std::int64_t grid_lower_bound(const CylinderDims& dims) {
    check_cylinder(dims);
    if (dims.m < 18 || dims.n < 18) {
        throw bounds_error("the grid lower bound needs m, n >= 18");
    }
    return (std::int64_t(dims.m + 2) * dims.n) / 5 - 4;
}

std::optional<std::int64_t> known_gamma(const CylinderDims& dims) {
    check_cylinder(dims);
    if (dims.m < 16 || dims.m > 22 || dims.n < dims.m) return std::nullopt;
    const std::int64_t base =
        ceil_div(std::int64_t(dims.m + 2) * dims.n, 5);
    return base + kKnownGammaOffsets[dims.m - 16][dims.n % 5];
}

BoundReport make_bound_report(const CylinderDims& dims, const LTable* ltable) {
    check_cylinder(dims);
    BoundReport report;
    report.dims = dims;
    report.residue = dims.n % 5;
    report.k = dims.n / 5;

    if (ltable != nullptr && dims.m >= 2 * ltable->rows &&
        dims.n >= 3 && ltable->values.count(dims.n) != 0) {
        report.lower_new = lower_bound_from_L(dims, *ltable);
        report.flags.push_back("lower_new_from_l_table");
    } else if (dims.m >= 20 && dims.n >= 30) {
        report.lower_new = theorem_bound(dims);
    }
    if (dims.m >= 18 && dims.n >= 18) {
        report.lower_grid = grid_lower_bound(dims);
    }
    if (dims.m >= dims.n) {
        const ConstructionBound cb = construction_upper_bound(dims);
        report.upper_construction = cb.value;
        if (cb.rounded) report.flags.push_back("upper_construction_rounded");
    }
    if (dims.m >= 16 && dims.n >= 16) {
        report.upper_grid = grid_upper_bound(dims);
    }
    report.known_gamma = known_gamma(dims);
    return report;
}

std::string bound_report_json(const BoundReport& report) {
    nlohmann::ordered_json j;
    j["m"] = report.dims.m;
    j["n"] = report.dims.n;
    j["residue"] = report.residue;
    j["k"] = report.k;
    auto put = [&j](const char* key, const std::optional<std::int64_t>& v) {
        if (v) {
            j[key] = *v;
        } else {
            j[key] = nullptr;
        }
    };
    put("lower_new", report.lower_new);
    put("lower_grid", report.lower_grid);
    put("upper_construction", report.upper_construction);
    put("upper_grid", report.upper_grid);
    put("known_gamma", report.known_gamma);
    j["flags"] = report.flags;
    return j.dump(2);
}

std::vector<std::pair<int, int>> diagonal_pattern_dominating_set(
    const CylinderDims& dims) {
    check_cylinder(dims);
    if (dims.n % 5 != 0) {
        throw bounds_error("the diagonal pattern needs n = 0 (mod 5), got n = " +
                           std::to_string(dims.n));
    }

    VertexSet set;
    set.dims = dims;
    // Interior: the period-5 diagonal 2i + j = 0 (mod 5), which covers every
    // vertex exactly once on the unbounded grid. The only vertices it misses
    // on the cylinder are those whose unique coverer would sit above row 0 or
    // below row m-1; adding exactly those cells along both borders repairs it.
    const int top_residue = 2 % 5;                    // j with 2(-1)+j = 0 (mod 5)
    const int bottom_residue = ((-2 * dims.m) % 5 + 5) % 5; // j with 2m+j = 0 (mod 5)
    for (int i = 0; i < dims.m; ++i) {
        for (int j = 0; j < dims.n; ++j) {
            const bool diagonal = (2 * i + j) % 5 == 0;
            const bool top_fix = i == 0 && j % 5 == top_residue;
            const bool bottom_fix = i == dims.m - 1 && j % 5 == bottom_residue;
            if (diagonal || top_fix || bottom_fix) set.members.emplace_back(i, j);
        }
    }

    const std::size_t expected =
        static_cast<std::size_t>(dims.m + 2) * dims.n / 5;
    if (set.members.size() != expected) {
        throw construction_error("diagonal pattern produced " +
                                 std::to_string(set.members.size()) +
                                 " vertices, expected " + std::to_string(expected));
    }
    if (!is_dominating(set)) {
        throw construction_error("diagonal pattern failed domination check for m=" +
                                 std::to_string(dims.m) + ", n=" +
                                 std::to_string(dims.n));
    }
    return set.members;
}

} // namespace cyldom
