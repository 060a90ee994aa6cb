#include "cyldom/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cyldom/bounds.hpp"
#include "cyldom/oracle.hpp"
#include "cyldom/scan.hpp"
#include "cyldom/transfer.hpp"
#include "cyldom/tropical.hpp"
#include "cyldom/words.hpp"

namespace cyldom::cli {

namespace {

std::pair<int, int> parse_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos) {
        throw bounds_error("range must look like A..B, got '" + text + "'");
    }
    try {
        const int lo = std::stoi(text.substr(0, pos));
        const int hi = std::stoi(text.substr(pos + 2));
        if (lo > hi) throw bounds_error("empty range '" + text + "'");
        return {lo, hi};
    } catch (const bounds_error&) {
        throw;
    } catch (const std::exception&) {
        throw bounds_error("range must look like A..B, got '" + text + "'");
    }
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::trunc);
    if (!file) throw io_error("cannot open " + path + " for writing");
    return file;
}

std::string csv_cell(const std::optional<std::int64_t>& v) {
    return v ? std::to_string(*v) : std::string();
}

std::string join_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (const auto& f : flags) {
        if (!out.empty()) out += ';';
        out += f;
    }
    return out;
}

void write_bound_csv_row(std::ostream& out, const BoundReport& r) {
    out << r.dims.m << ',' << r.dims.n << ',' << r.residue << ',' << r.k << ','
        << csv_cell(r.lower_new) << ',' << csv_cell(r.lower_grid) << ','
        << csv_cell(r.upper_construction) << ',' << csv_cell(r.upper_grid) << ','
        << csv_cell(r.known_gamma) << ',' << join_flags(r.flags) << '\n';
}

bool has_checkpoint_files(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) return false;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.starts_with("state_") && name.ends_with(".json")) return true;
    }
    return false;
}

int run(int argc, const char* const* argv) {
    CLI::App app{"domination-number bounds for cylinders P_m x C_n via "
                 "tropical transfer-matrix powers"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig config;
    app.add_option("--threads", config.threads,
                   "worker threads (default: hardware parallelism)")
        ->envname("CYLDOM_THREADS");
    app.add_option("--format", config.format, "output format where a choice exists")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_flag("--quiet", config.quiet, "suppress progress output");

    // words
    auto* words_cmd = app.add_subcommand("words", "count or list the correct column words");
    int words_rows = 0;
    bool words_list = false;
    words_cmd->add_option("--rows", words_rows, "word length r")->required();
    words_cmd->add_flag("--list", words_list, "print every word, one per line");

    // matrix build/pow/mul
    auto* matrix_cmd = app.add_subcommand("matrix", "transfer matrices and tropical products");
    matrix_cmd->require_subcommand(1);
    auto* mbuild = matrix_cmd->add_subcommand("build", "build the transfer matrix for r rows");
    int mbuild_rows = 0;
    std::string mbuild_out;
    mbuild->add_option("--rows", mbuild_rows, "word length r")->required();
    mbuild->add_option("--out", mbuild_out, "output .tmx file")->required();
    auto* mpow = matrix_cmd->add_subcommand("pow", "tropical matrix power");
    std::string mpow_in, mpow_out;
    std::uint64_t mpow_n = 0;
    mpow->add_option("--in", mpow_in, "input .tmx file")->required();
    mpow->add_option("--n", mpow_n, "exponent")->required();
    mpow->add_option("--out", mpow_out, "output .tmx file")->required();
    auto* mmul = matrix_cmd->add_subcommand("mul", "tropical matrix product");
    std::string mmul_a, mmul_b, mmul_out;
    mmul->add_option("--a", mmul_a, "left .tmx file")->required();
    mmul->add_option("--b", mmul_b, "right .tmx file")->required();
    mmul->add_option("--out", mmul_out, "output .tmx file")->required();

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "minimum border waste per cycle length");
    int scan_rows = 0;
    std::uint64_t scan_max_n = 0;
    std::string scan_checkpoint, scan_resume, scan_out;
    scan_cmd->add_option("--rows", scan_rows, "border depth r")->required();
    scan_cmd->add_option("--max-n", scan_max_n, "largest cycle length")->required();
    scan_cmd->add_option("--checkpoint", scan_checkpoint, "directory for checkpoints");
    scan_cmd->add_option("--resume", scan_resume, "resume from this checkpoint directory");
    scan_cmd->add_option("--checkpoint-every", config.checkpoint_every,
                         "powers between checkpoints")
        ->capture_default_str();
    scan_cmd->add_option("--out", scan_out, "output CSV table")->required();

    // bound / bound-table
    auto* bound_cmd = app.add_subcommand("bound", "bound report for one cylinder");
    int bound_m = 0, bound_n = 0;
    std::string bound_ltable;
    bound_cmd->add_option("--m", bound_m, "rows")->required();
    bound_cmd->add_option("--n", bound_n, "columns")->required();
    bound_cmd->add_option("--l-table", bound_ltable, "scanned L-table CSV");

    auto* btable_cmd = app.add_subcommand("bound-table", "bound reports over a grid of sizes");
    std::string btable_mrange, btable_nrange, btable_out, btable_ltable;
    btable_cmd->add_option("--m-range", btable_mrange, "rows, inclusive A..B")->required();
    btable_cmd->add_option("--n-range", btable_nrange, "columns, inclusive A..B")->required();
    btable_cmd->add_option("--out", btable_out, "output CSV file")->required();
    btable_cmd->add_option("--l-table", btable_ltable, "scanned L-table CSV");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force ground truth");
    oracle_cmd->require_subcommand(1);
    auto* ogamma = oracle_cmd->add_subcommand("gamma", "exact domination number");
    int ogamma_m = 0, ogamma_n = 0;
    ogamma->add_option("--m", ogamma_m, "rows")->required();
    ogamma->add_option("--n", ogamma_n, "columns")->required();
    auto* owasted = oracle_cmd->add_subcommand("wasted", "minimum wasted domination of a border strip");
    int owasted_rows = 0, owasted_cols = 0;
    owasted->add_option("--rows", owasted_rows, "strip depth r")->required();
    owasted->add_option("--cols", owasted_cols, "cycle length n")->required();
    auto* overify = oracle_cmd->add_subcommand("verify", "cross-check the transfer machinery");
    int overify_rows = 0, overify_cols = 0;
    overify->add_option("--rows", overify_rows, "strip depth r")->required();
    overify->add_option("--cols", overify_cols, "cycle length n")->required();

    // pattern
    auto* pattern_cmd = app.add_subcommand("pattern", "verified diagonal dominating set, n = 0 (mod 5)");
    int pattern_m = 0, pattern_n = 0;
    std::string pattern_out;
    pattern_cmd->add_option("--m", pattern_m, "rows")->required();
    pattern_cmd->add_option("--n", pattern_n, "columns")->required();
    pattern_cmd->add_option("--out", pattern_out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (*words_cmd) {
        if (words_list) {
            const WordTable table = enumerate_correct_words(words_rows);
            std::cout << "alpha(" << words_rows << ") = " << table.size() << '\n';
            for (std::size_t i = 0; i < table.size(); ++i) {
                std::cout << table.word(i).str() << '\n';
            }
        } else {
            std::cout << "alpha(" << words_rows << ") = "
                      << count_correct_words(words_rows) << '\n';
        }
        return 0;
    }

    if (*mbuild) {
        const TropicalMatrix a = build_transfer_matrix(mbuild_rows, config.threads);
        write_matrix(a, mbuild_out);
        if (!config.quiet) {
            std::cerr << "wrote " << mbuild_out << " (dim " << a.dim() << ")\n";
        }
        return 0;
    }
    if (*mpow) {
        const TropicalMatrix a = read_matrix(mpow_in);
        const TropicalMatrix p =
            tropical_pow(a, mpow_n, MatmulOptions{config.threads, 0});
        write_matrix(p, mpow_out);
        return 0;
    }
    if (*mmul) {
        const TropicalMatrix a = read_matrix(mmul_a);
        const TropicalMatrix b = read_matrix(mmul_b);
        write_matrix(tropical_matmul(a, b, MatmulOptions{config.threads, 0}),
                     mmul_out);
        return 0;
    }

    if (*scan_cmd) {
        ScanOptions opts;
        opts.threads = config.threads;
        opts.checkpoint_every = config.checkpoint_every;
        if (!scan_checkpoint.empty()) opts.checkpoint_dir = scan_checkpoint;
        if (!scan_resume.empty()) {
            if (has_checkpoint_files(scan_resume)) {
                opts.resume_dir = scan_resume;
            } else if (!config.quiet) {
                std::cerr << "no checkpoint in " << scan_resume
                          << ", starting fresh\n";
            }
        }
        if (!config.quiet) {
            opts.progress = [](std::uint64_t n, std::uint64_t l, double sec) {
                std::fprintf(stderr, "n=%llu L=%llu elapsed=%.1fs\n",
                             static_cast<unsigned long long>(n),
                             static_cast<unsigned long long>(l), sec);
            };
        }
        const LTable table =
            scan_L(scan_rows, scan_max_n, opts);
        write_ltable_csv(table, scan_out);
        if (!config.quiet) {
            if (table.recurrence) {
                std::cerr << "recurrence at n0=" << table.recurrence->n0
                          << " shift=" << table.recurrence->shift << '\n';
            } else {
                std::cerr << "no recurrence detected up to n=" << table.horizon
                          << '\n';
            }
        }
        return 0;
    }

    if (*bound_cmd) {
        std::optional<LTable> table;
        if (!bound_ltable.empty()) table = read_ltable_csv(bound_ltable);
        const BoundReport report = make_bound_report(
            CylinderDims{bound_m, bound_n}, table ? &*table : nullptr);
        std::cout << bound_report_json(report) << '\n';
        return 0;
    }

    if (*btable_cmd) {
        const auto [m_lo, m_hi] = parse_range(btable_mrange);
        const auto [n_lo, n_hi] = parse_range(btable_nrange);
        std::optional<LTable> table;
        if (!btable_ltable.empty()) table = read_ltable_csv(btable_ltable);
        std::ofstream file;
        std::ostream& out = open_output(file, btable_out);
        out << "m,n,residue,k,lower_new,lower_grid,upper_construction,"
               "upper_grid,known_gamma,flags\n";
        for (int m = m_lo; m <= m_hi; ++m) {
            for (int n = n_lo; n <= n_hi; ++n) {
                const BoundReport report = make_bound_report(
                    CylinderDims{m, n}, table ? &*table : nullptr);
                write_bound_csv_row(out, report);
            }
        }
        out.flush();
        if (!out) throw io_error("write failed for " + btable_out);
        return 0;
    }

    if (*ogamma) {
        const int g = brute_force_gamma(CylinderDims{ogamma_m, ogamma_n});
        std::cout << "gamma(P_" << ogamma_m << " x C_" << ogamma_n << ") = " << g
                  << '\n';
        return 0;
    }
    if (*owasted) {
        const WastedResult r = brute_force_wasted_min(owasted_rows, owasted_cols);
        std::cout << "wasted_min(P_" << owasted_rows << " x C_" << owasted_cols
                  << ") = " << r.wasted << '\n';
        std::cout << "closed_neighborhood_size = " << r.closed_neighborhood_size
                  << '\n';
        std::cout << "witness =";
        for (const auto& [i, j] : r.set.members) {
            std::cout << " (" << i << ',' << j << ')';
        }
        std::cout << '\n';
        return 0;
    }
    if (*overify) {
        const bool ok = run_verification_suite(overify_rows, overify_cols, std::cout);
        return ok ? 0 : 1;
    }

    if (*pattern_cmd) {
        const CylinderDims dims{pattern_m, pattern_n};
        const auto vertices = diagonal_pattern_dominating_set(dims);
        std::ofstream file;
        std::ostream& out = open_output(file, pattern_out);
        if (config.format == "json") {
            nlohmann::ordered_json j;
            j["m"] = dims.m;
            j["n"] = dims.n;
            j["size"] = vertices.size();
            auto arr = nlohmann::ordered_json::array();
            for (const auto& [i, jcol] : vertices) arr.push_back({i, jcol});
            j["vertices"] = std::move(arr);
            out << j.dump(2) << '\n';
        } else {
            out << "# dominating set of P_" << dims.m << " x C_" << dims.n
                << ", " << vertices.size() << " vertices\n";
            for (const auto& [i, j] : vertices) out << i << ' ' << j << '\n';
        }
        out.flush();
        if (!pattern_out.empty() && !out) {
            throw io_error("write failed for " + pattern_out);
        }
        return 0;
    }

    std::cerr << "no subcommand selected\n";
    return 1;
}

} // namespace

int dispatch(int argc, const char* const* argv) {
    try {
        return run(argc, argv);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const format_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const resume_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace cyldom::cli
