#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cyldom/cli.hpp"
#include "cyldom/scan.hpp"
#include "cyldom/tropical.hpp"
#include "cyldom/transfer.hpp"

namespace {

struct CliResult {
    int code = 0;
    std::string out;
};

CliResult run_cli(std::vector<std::string> args) {
    std::vector<const char*> argv;
    argv.push_back("cyldom");
    for (const auto& a : args) argv.push_back(a.c_str());

    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    const int code =
        cyldom::cli::dispatch(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old);
    return {code, captured.str()};
}

std::filesystem::path fresh_dir(const char* name) {
    auto dir = std::filesystem::temp_directory_path() / "cyldom_cli_test" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("words prints the count") {
    const CliResult r = run_cli({"words", "--rows", "10"});
    CHECK(r.code == 0);
    CHECK(r.out == "alpha(10) = 8119\n");
}

TEST_CASE("words lists every word") {
    const CliResult r = run_cli({"words", "--rows", "2", "--list"});
    CHECK(r.code == 0);
    CHECK(r.out == "alpha(2) = 7\n00\n01\n10\n11\n12\n21\n22\n");
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run_cli({"frobnicate"}).code == 1);
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"words"}).code == 1);              // missing --rows
    CHECK(run_cli({"words", "--rows", "0"}).code == 1);
    CHECK(run_cli({"words", "--rows", "51"}).code == 1);  // count overflows
    CHECK(run_cli({"words", "--rows", "25"}).code == 0);  // count alone is fine
    CHECK(run_cli({"words", "--rows", "25", "--list"}).code == 1);
}

TEST_CASE("help exits cleanly everywhere") {
    CHECK(run_cli({"--help"}).code == 0);
    for (const char* sub : {"words", "matrix", "scan", "bound", "bound-table",
                            "oracle", "pattern"}) {
        CHECK(run_cli({sub, "--help"}).code == 0);
    }
    CHECK(run_cli({"matrix", "build", "--help"}).code == 0);
    CHECK(run_cli({"oracle", "verify", "--help"}).code == 0);
}

TEST_CASE("bound emits the report as json") {
    const CliResult r = run_cli({"bound", "--m", "20", "--n", "30"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["m"] == 20);
    CHECK(j["n"] == 30);
    CHECK(j["lower_new"] == 132);
    CHECK(j["known_gamma"] == 132);
    CHECK(j["lower_grid"] == 128);
    CHECK(j["upper_grid"] == 136);
    CHECK(j["upper_construction"].is_null());
}

TEST_CASE("bound accepts a scanned table") {
    const auto dir = fresh_dir("bound_table");
    const cyldom::LTable table = cyldom::scan_L(2, 12);
    const auto path = dir / "l2.csv";
    cyldom::write_ltable_csv(table, path);
    const CliResult r =
        run_cli({"bound", "--m", "6", "--n", "9", "--l-table", path.string()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    // ceil((2 * L(9) + 54) / 5) with L(9) = 3
    CHECK(j["lower_new"] == 12);
    bool flagged = false;
    for (const auto& f : j["flags"]) flagged |= (f == "lower_new_from_l_table");
    CHECK(flagged);
}

TEST_CASE("bound-table output is deterministic") {
    const auto dir = fresh_dir("btable");
    const auto a = dir / "a.csv";
    const auto b = dir / "b.csv";
    CHECK(run_cli({"bound-table", "--m-range", "18..24", "--n-range", "28..40",
                   "--out", a.string()})
              .code == 0);
    CHECK(run_cli({"--threads", "3", "bound-table", "--m-range", "18..24",
                   "--n-range", "28..40", "--out", b.string()})
              .code == 0);
    const std::string text = slurp(a);
    CHECK(text == slurp(b));
    CHECK(text.starts_with(
        "m,n,residue,k,lower_new,lower_grid,upper_construction,"
        "upper_grid,known_gamma,flags\n"));
    CHECK(text.find("20,30,0,6,132,128,,136,132,") != std::string::npos);
}

TEST_CASE("bad ranges exit with 1") {
    CHECK(run_cli({"bound-table", "--m-range", "20", "--n-range", "30..31",
                   "--out", "/tmp/x.csv"})
              .code == 1);
    CHECK(run_cli({"bound-table", "--m-range", "9..3", "--n-range", "30..31",
                   "--out", "/tmp/x.csv"})
              .code == 1);
}

TEST_CASE("matrix build, pow, and mul through files") {
    const auto dir = fresh_dir("matrix");
    const auto a_path = (dir / "a.tmx").string();
    const auto sq_path = (dir / "sq.tmx").string();
    const auto cube_path = (dir / "cube.tmx").string();
    const auto mul_path = (dir / "mul.tmx").string();

    CHECK(run_cli({"--quiet", "matrix", "build", "--rows", "3", "--out", a_path})
              .code == 0);
    CHECK(run_cli({"matrix", "pow", "--in", a_path, "--n", "2", "--out", sq_path})
              .code == 0);
    CHECK(run_cli({"matrix", "mul", "--a", a_path, "--b", sq_path, "--out",
                   mul_path})
              .code == 0);
    CHECK(run_cli({"matrix", "pow", "--in", a_path, "--n", "3", "--out",
                   cube_path})
              .code == 0);

    const cyldom::TropicalMatrix a = cyldom::read_matrix(a_path);
    CHECK(a == cyldom::build_transfer_matrix(3));
    CHECK(cyldom::read_matrix(mul_path) == cyldom::read_matrix(cube_path));
    CHECK(cyldom::read_matrix(cube_path).meta_power == 3);

    CHECK(run_cli({"matrix", "pow", "--in", (dir / "nope.tmx").string(), "--n",
                   "2", "--out", sq_path})
              .code == 2);
    CHECK(run_cli({"matrix", "build", "--rows", "1", "--out", a_path}).code == 1);
}

TEST_CASE("scan writes the table and resumes from checkpoints") {
    const auto dir = fresh_dir("scan");
    const auto out1 = dir / "t1.csv";
    const auto out2 = dir / "t2.csv";
    const auto ckpt = (dir / "ckpt").string();
    CHECK(run_cli({"--quiet", "scan", "--rows", "2", "--max-n", "14",
                   "--checkpoint", ckpt, "--checkpoint-every", "5", "--out",
                   out1.string()})
              .code == 0);
    CHECK(run_cli({"--quiet", "scan", "--rows", "2", "--max-n", "14", "--resume",
                   ckpt, "--out", out2.string()})
              .code == 0);
    CHECK(slurp(out1) == slurp(out2));
    const cyldom::LTable table = cyldom::read_ltable_csv(out1);
    CHECK(table.rows == 2);
    CHECK(table.at(4) == 1);

    // Resuming from an empty directory falls back to a fresh scan.
    const auto out3 = dir / "t3.csv";
    CHECK(run_cli({"--quiet", "scan", "--rows", "2", "--max-n", "14", "--resume",
                   (dir / "empty").string(), "--out", out3.string()})
              .code == 0);
    CHECK(slurp(out1) == slurp(out3));
}

TEST_CASE("oracle subcommands") {
    const CliResult gamma = run_cli({"oracle", "gamma", "--m", "2", "--n", "4"});
    CHECK(gamma.code == 0);
    CHECK(gamma.out == "gamma(P_2 x C_4) = 2\n");

    const CliResult wasted =
        run_cli({"oracle", "wasted", "--rows", "2", "--cols", "4"});
    CHECK(wasted.code == 0);
    CHECK(wasted.out.find("wasted_min(P_2 x C_4) = 1") != std::string::npos);
    CHECK(wasted.out.find("witness =") != std::string::npos);

    const CliResult verify =
        run_cli({"oracle", "verify", "--rows", "2", "--cols", "4"});
    CHECK(verify.code == 0);
    CHECK(verify.out.find("PASS") != std::string::npos);
    CHECK(verify.out.find("FAIL") == std::string::npos);

    CHECK(run_cli({"oracle", "gamma", "--m", "9", "--n", "9"}).code == 1);
}

TEST_CASE("pattern emits a verified set") {
    const CliResult text = run_cli({"pattern", "--m", "12", "--n", "10"});
    CHECK(text.code == 0);
    CHECK(text.out.find("28 vertices") != std::string::npos);

    const CliResult json_out =
        run_cli({"--format", "json", "pattern", "--m", "12", "--n", "10"});
    CHECK(json_out.code == 0);
    const auto j = nlohmann::json::parse(json_out.out);
    CHECK(j["size"] == 28);
    CHECK(j["vertices"].size() == 28);

    CHECK(run_cli({"pattern", "--m", "12", "--n", "9"}).code == 1);
}
