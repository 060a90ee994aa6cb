#include "cyldom/scan.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cyldom/transfer.hpp"
#include "cyldom/words.hpp"

namespace cyldom {

namespace {

using nlohmann::json;

constexpr int kStateVersion = 1;

struct PendingShift {
    std::uint64_t n0 = 0;
    tropical_value shift = 0;
    int confirmed = 0; // transitions re-verified after the first hit
};

std::string zero_padded(std::uint64_t n) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%06llu", static_cast<unsigned long long>(n));
    return buf;
}

std::filesystem::path state_path(const std::filesystem::path& dir, std::uint64_t n) {
    return dir / ("state_" + zero_padded(n) + ".json");
}

std::filesystem::path matrix_path(const std::filesystem::path& dir, std::uint64_t n) {
    return dir / ("power_" + zero_padded(n) + ".tmx");
}

void write_checkpoint(const std::filesystem::path& dir, int rows,
                      std::uint64_t n, const TropicalMatrix& cur,
                      const std::map<std::uint64_t, std::uint64_t>& values,
                      const std::optional<PendingShift>& pending) {
    std::filesystem::create_directories(dir);

    const std::filesystem::path mpath = matrix_path(dir, n);
    const std::filesystem::path mtmp = mpath.string() + ".tmp";
    write_matrix(cur, mtmp);
    std::filesystem::rename(mtmp, mpath);

    json state;
    state["version"] = kStateVersion;
    state["rows"] = rows;
    state["n"] = n;
    state["matrix"] = mpath.filename().string();
    json vals = json::array();
    for (const auto& [k, v] : values) vals.push_back({k, v});
    state["values"] = std::move(vals);
    if (pending) {
        state["pending"] = {{"n0", pending->n0},
                            {"shift", pending->shift},
                            {"confirmed", pending->confirmed}};
    } else {
        state["pending"] = nullptr;
    }

    const std::filesystem::path spath = state_path(dir, n);
    const std::filesystem::path stmp = spath.string() + ".tmp";
    {
        std::ofstream out(stmp);
        if (!out) throw io_error("cannot write checkpoint " + stmp.string());
        out << state.dump(2) << '\n';
    }
    std::filesystem::rename(stmp, spath);

    // Keep the two newest checkpoints, drop the rest.
    std::vector<std::uint64_t> seen;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.starts_with("state_") && name.ends_with(".json")) {
            seen.push_back(std::stoull(name.substr(6, 6)));
        }
    }
    std::sort(seen.rbegin(), seen.rend());
    for (std::size_t i = 2; i < seen.size(); ++i) {
        std::error_code ec;
        std::filesystem::remove(state_path(dir, seen[i]), ec);
        std::filesystem::remove(matrix_path(dir, seen[i]), ec);
    }
}

struct ResumedState {
    std::uint64_t n = 0;
    TropicalMatrix cur;
    std::map<std::uint64_t, std::uint64_t> values;
    std::optional<PendingShift> pending;
};

ResumedState load_checkpoint(const std::filesystem::path& dir, int rows) {
    if (!std::filesystem::is_directory(dir)) {
        throw resume_error("resume directory " + dir.string() + " does not exist");
    }
    std::uint64_t newest = 0;
    bool found = false;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.starts_with("state_") && name.ends_with(".json")) {
            newest = std::max<std::uint64_t>(newest, std::stoull(name.substr(6, 6)));
            found = true;
        }
    }
    if (!found) {
        throw resume_error("no checkpoint found in " + dir.string());
    }

    const std::filesystem::path spath = state_path(dir, newest);
    json state;
    try {
        std::ifstream in(spath);
        if (!in) throw io_error("cannot open " + spath.string());
        in >> state;
    } catch (const std::exception& e) {
        throw resume_error("unreadable checkpoint " + spath.string() + ": " +
                           e.what());
    }

    ResumedState resumed;
    try {
        if (state.at("version").get<int>() != kStateVersion) {
            throw format_error("unsupported checkpoint version");
        }
        if (state.at("rows").get<int>() != rows) {
            throw format_error("checkpoint is for rows=" +
                               std::to_string(state.at("rows").get<int>()));
        }
        resumed.n = state.at("n").get<std::uint64_t>();
        for (const auto& pair : state.at("values")) {
            resumed.values[pair.at(0).get<std::uint64_t>()] =
                pair.at(1).get<std::uint64_t>();
        }
        if (!state.at("pending").is_null()) {
            PendingShift p;
            p.n0 = state["pending"].at("n0").get<std::uint64_t>();
            p.shift = state["pending"].at("shift").get<tropical_value>();
            p.confirmed = state["pending"].at("confirmed").get<int>();
            resumed.pending = p;
        }
        resumed.cur =
            read_matrix(dir / state.at("matrix").get<std::string>());
    } catch (const resume_error&) {
        throw;
    } catch (const std::exception& e) {
        throw resume_error("invalid checkpoint " + spath.string() + ": " +
                           e.what());
    }
    if (resumed.cur.meta_power != resumed.n) {
        throw resume_error("checkpoint matrix power " +
                           std::to_string(resumed.cur.meta_power) +
                           " disagrees with state n=" + std::to_string(resumed.n));
    }
    return resumed;
}

} // namespace

std::uint64_t LTable::at(std::uint64_t n) const {
    const auto it = values.find(n);
    if (it == values.end()) {
        throw bounds_error("L(" + std::to_string(n) + ") is outside the table range [3, " +
                           std::to_string(horizon) + "]");
    }
    return it->second;
}

LTable scan_L(int rows, std::uint64_t horizon, const ScanOptions& opts) {
    return scan_powers(build_transfer_matrix(rows, opts.threads), horizon, opts);
}

LTable scan_powers(const TropicalMatrix& input, std::uint64_t horizon,
                   const ScanOptions& opts) {
    if (horizon < 3) throw bounds_error("scan horizon must be >= 3");
    if (input.dim() == 0) throw dimension_error("scan needs a non-empty matrix");

    TropicalMatrix base = input;
    base.meta_power = 1; // the iteration counts powers of this matrix
    const int rows = static_cast<int>(base.meta_rows);
    const MatmulOptions mm{opts.threads, 0};

    TropicalMatrix cur;
    std::uint64_t n = 1;
    std::map<std::uint64_t, std::uint64_t> values;
    std::optional<PendingShift> pending;

    if (!opts.resume_dir.empty()) {
        ResumedState resumed = load_checkpoint(opts.resume_dir, rows);
        if (resumed.cur.dim() != base.dim()) {
            throw resume_error("checkpoint dimension mismatch");
        }
        cur = std::move(resumed.cur);
        n = resumed.n;
        values = std::move(resumed.values);
        values.erase(values.upper_bound(horizon), values.end());
        pending = resumed.pending;
    } else {
        cur = base;
    }

    const auto start = std::chrono::steady_clock::now();
    std::optional<Recurrence> recurrence;
    const int every = std::max(1, opts.checkpoint_every);

    while (n < horizon || (pending && pending->confirmed < 2)) {
        TropicalMatrix next = tropical_matmul(base, cur, mm); // A^{n+1}
        const std::uint64_t n_next = n + 1;
        const tropical_value diag = min_diagonal(next);
        if (n_next >= 3 && n_next <= horizon) values[n_next] = diag;
        if (opts.progress) {
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
            opts.progress(n_next, diag, elapsed);
        }

        const std::optional<tropical_value> shift =
            matrix_equal_shifted(cur, next);
        if (pending) {
            if (shift && *shift == pending->shift) {
                ++pending->confirmed;
            } else {
                pending.reset(); // coincidence, keep scanning
            }
        }
        if (!pending && shift && n_next <= horizon) {
            pending = PendingShift{n, *shift, 0};
        }

        cur = std::move(next);
        n = n_next;

        if (pending && pending->confirmed >= 2) {
            recurrence = Recurrence{pending->n0, pending->shift};
            break;
        }
        if (!opts.checkpoint_dir.empty() && n % every == 0 && n < horizon) {
            write_checkpoint(opts.checkpoint_dir, rows, n, cur, values, pending);
        }
    }

    LTable table;
    table.rows = rows;
    table.horizon = horizon;
    table.recurrence = recurrence;
    table.last_computed = std::min<std::uint64_t>(n, horizon);
    table.values = std::move(values);

    if (recurrence && table.last_computed < horizon) {
        // Extend from the newest computed power; equivalent to anchoring at n0.
        const std::uint64_t anchor = table.last_computed;
        const std::uint64_t anchor_value = table.values.at(anchor);
        for (std::uint64_t k = anchor + 1; k <= horizon; ++k) {
            table.values[k] =
                anchor_value + std::uint64_t(recurrence->shift) * (k - anchor);
        }
    }
    return table;
}

void write_ltable_csv(const LTable& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    out << "# cyldom l-table rows=" << table.rows << " horizon=" << table.horizon
        << " last_computed=" << table.last_computed << '\n';
    if (table.recurrence) {
        out << "# recurrence n0=" << table.recurrence->n0
            << " shift=" << table.recurrence->shift << '\n';
    } else {
        out << "# recurrence none\n";
    }
    if (table.rows == 10) {
        out << "# note: values for n < 30 are irregular\n";
    }
    out << "n,L,source\n";
    for (const auto& [n, value] : table.values) {
        out << n << ',' << value << ','
            << (n <= table.last_computed ? "computed" : "extended") << '\n';
    }
    if (!out) throw io_error("write failed for " + path.string());
}

LTable read_ltable_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path.string() + " for reading");
    LTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string token;
            while (ss >> token) {
                if (token.starts_with("rows=")) table.rows = std::stoi(token.substr(5));
                else if (token.starts_with("horizon=")) table.horizon = std::stoull(token.substr(8));
                else if (token.starts_with("last_computed=")) table.last_computed = std::stoull(token.substr(14));
                else if (token.starts_with("n0=")) {
                    if (!table.recurrence) table.recurrence.emplace();
                    table.recurrence->n0 = std::stoull(token.substr(3));
                } else if (token.starts_with("shift=")) {
                    if (!table.recurrence) table.recurrence.emplace();
                    table.recurrence->shift =
                        static_cast<tropical_value>(std::stoul(token.substr(6)));
                }
            }
            continue;
        }
        if (!header_seen) {
            if (line != "n,L,source") {
                throw format_error(path.string() + ": expected header n,L,source");
            }
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        std::string ncell, lcell, source;
        if (!std::getline(ss, ncell, ',') || !std::getline(ss, lcell, ',') ||
            !std::getline(ss, source)) {
            throw format_error(path.string() + ": malformed row '" + line + "'");
        }
        try {
            table.values[std::stoull(ncell)] = std::stoull(lcell);
        } catch (const std::exception&) {
            throw format_error(path.string() + ": malformed row '" + line + "'");
        }
    }
    if (!header_seen || table.rows == 0 || table.values.empty()) {
        throw format_error(path.string() + ": not an l-table csv");
    }
    if (table.horizon == 0) table.horizon = table.values.rbegin()->first;
    if (table.last_computed == 0) table.last_computed = table.horizon;
    return table;
}

} // namespace cyldom
