#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>

#include "cyldom/tropical.hpp"

namespace cyldom {

// A^{n0+1} = shift (+) A^{n0} entrywise; by induction L(n) then grows by
// shift per step for all n >= n0.
struct Recurrence {
    std::uint64_t n0 = 0;
    tropical_value shift = 0;
    bool operator==(const Recurrence&) const = default;
};

// Minimum wasted domination of the border strip of depth `rows`, per cycle
// length n. Values at n > last_computed are extended through the recurrence.
struct LTable {
    int rows = 0;
    std::uint64_t horizon = 0;
    std::uint64_t last_computed = 0;
    std::map<std::uint64_t, std::uint64_t> values; // n -> L(n), n in [3, horizon]
    std::optional<Recurrence> recurrence;

    std::uint64_t at(std::uint64_t n) const;
    bool operator==(const LTable&) const = default;
};

struct ScanOptions {
    int threads = 0;
    std::filesystem::path checkpoint_dir; // empty: no checkpoints
    std::filesystem::path resume_dir;     // empty: fresh start
    int checkpoint_every = 10;            // powers between checkpoints
    // Called once per computed power with (n, L(n), seconds since start).
    std::function<void(std::uint64_t, std::uint64_t, double)> progress;
};

// Iterates A^n for n = 2.., recording the diagonal minimum for n >= 3, until
// the entrywise constant-shift recurrence is detected (and confirmed on the
// two following powers) or the horizon is reached. A resumed scan continues
// from the newest checkpoint and yields the same table as an uninterrupted
// run.
LTable scan_L(int rows, std::uint64_t horizon, const ScanOptions& opts = {});

// The same power iteration over an arbitrary base matrix; scan_L is this
// applied to the transfer matrix. rows in the result mirrors base.meta_rows.
LTable scan_powers(const TropicalMatrix& base, std::uint64_t horizon,
                   const ScanOptions& opts = {});

// CSV with columns n,L,source and the table parameters in leading comments.
void write_ltable_csv(const LTable& table, const std::filesystem::path& path);
LTable read_ltable_csv(const std::filesystem::path& path);

} // namespace cyldom
