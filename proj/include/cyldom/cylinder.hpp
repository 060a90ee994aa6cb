#pragma once

#include "cyldom/errors.hpp"

#include <string>

namespace cyldom {

// P_m x C_n: m rows (each row is a cycle of length n), n columns (each column
// is a path of length m). Rows are numbered top to bottom, columns wrap.
struct CylinderDims {
    int m = 0; // path length, rows
    int n = 0; // cycle length, columns

    bool operator==(const CylinderDims&) const = default;
};

inline void check_cylinder(const CylinderDims& dims, int min_m = 2) {
    if (dims.m < min_m) {
        throw bounds_error("cylinder needs m >= " + std::to_string(min_m) +
                           ", got m = " + std::to_string(dims.m));
    }
    if (dims.n < 3) {
        throw bounds_error("cycle length must be >= 3, got n = " +
                           std::to_string(dims.n));
    }
}

} // namespace cyldom
