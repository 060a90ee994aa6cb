#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cyldom/bounds.hpp"
#include "cyldom/oracle.hpp"
#include "cyldom/scan.hpp"
#include "cyldom/transfer.hpp"
#include "cyldom/tropical.hpp"
#include "cyldom/words.hpp"

namespace py = pybind11;
using namespace cyldom;

namespace {

CorrectWord word(const std::string& text) { return CorrectWord::from_string(text); }

VertexSet vertex_set(int m, int n, std::vector<std::pair<int, int>> members) {
    std::sort(members.begin(), members.end());
    return VertexSet{{m, n}, std::move(members)};
}

const char* offset_name(NdOffset offset) {
    switch (offset) {
    case NdOffset::prev: return "prev";
    case NdOffset::self: return "self";
    case NdOffset::next: return "next";
    case NdOffset::below: return "below";
    }
    return "?";
}

py::object opt_int(const std::optional<std::int64_t>& v) {
    if (v) return py::int_(*v);
    return py::none();
}

} // namespace

PYBIND11_MODULE(_cyldom, m) {
    m.doc() = "Tropical transfer-matrix bounds for domination numbers of "
              "cylinders P_m x C_n";
    m.attr("INF") = py::int_(kInf);

    // words
    m.def("count_correct_words", &count_correct_words, py::arg("rows"));
    m.def(
        "correct_words",
        [](int rows) {
            const WordTable table = enumerate_correct_words(rows);
            std::vector<std::string> out;
            out.reserve(table.size());
            for (std::size_t i = 0; i < table.size(); ++i) {
                out.push_back(table.word(i).str());
            }
            return out;
        },
        py::arg("rows"));
    m.def(
        "word_zeros", [](const std::string& w) { return word(w).zeros(); },
        py::arg("word"));

    // transfer
    m.def(
        "can_follow",
        [](const std::string& q, const std::string& p) {
            return can_follow(word(q), word(p));
        },
        py::arg("q"), py::arg("p"));
    m.def(
        "newly_dominated",
        [](const std::string& q, const std::string& p) {
            const NewlyDominatedResult nd = newly_dominated(word(q), word(p));
            py::list cells;
            for (const NdCell& cell : nd.cells) {
                cells.append(py::make_tuple(cell.row, offset_name(cell.offset)));
            }
            py::dict out;
            out["count"] = nd.count;
            out["cells"] = std::move(cells);
            return out;
        },
        py::arg("q"), py::arg("p"));
    m.def(
        "arc_label",
        [](const std::string& q, const std::string& p) {
            return arc_label(word(q), word(p));
        },
        py::arg("q"), py::arg("p"));
    m.def("build_transfer_matrix", &build_transfer_matrix, py::arg("rows"),
          py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

    // tropical matrices
    py::class_<TropicalMatrix>(m, "TropicalMatrix", py::buffer_protocol())
        .def(py::init<std::size_t>(), py::arg("dim"))
        .def_static("identity", &TropicalMatrix::identity, py::arg("dim"))
        .def_static(
            "from_rows",
            [](const std::vector<std::vector<py::object>>& rows) {
                TropicalMatrix out(rows.size());
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    if (rows[i].size() != rows.size()) {
                        throw dimension_error("from_rows needs a square list");
                    }
                    for (std::size_t j = 0; j < rows.size(); ++j) {
                        const py::object& cell = rows[i][j];
                        out(i, j) = cell.is_none()
                                        ? kInf
                                        : cell.cast<tropical_value>();
                    }
                }
                return out;
            },
            py::arg("rows"), "Builds a matrix from nested lists; None means infinity.")
        .def_property_readonly("dim", &TropicalMatrix::dim)
        .def_readwrite("meta_rows", &TropicalMatrix::meta_rows)
        .def_readwrite("meta_power", &TropicalMatrix::meta_power)
        .def(
            "__getitem__",
            [](const TropicalMatrix& self, std::pair<std::size_t, std::size_t> ij)
                -> py::object {
                if (ij.first >= self.dim() || ij.second >= self.dim()) {
                    throw py::index_error();
                }
                const tropical_value v = self(ij.first, ij.second);
                if (v == kInf) return py::none();
                return py::int_(v);
            })
        .def("__eq__",
             [](const TropicalMatrix& a, const TropicalMatrix& b) { return a == b; })
        .def("__repr__",
             [](const TropicalMatrix& self) {
                 std::ostringstream ss;
                 ss << "TropicalMatrix(dim=" << self.dim() << ")";
                 return ss.str();
             })
        .def_buffer([](TropicalMatrix& self) {
            return py::buffer_info(
                self.data(), sizeof(tropical_value),
                py::format_descriptor<tropical_value>::format(), 2,
                {self.dim(), self.dim()},
                {self.dim() * sizeof(tropical_value), sizeof(tropical_value)});
        });

    m.def(
        "matmul",
        [](const TropicalMatrix& a, const TropicalMatrix& b, int threads,
           int panel_rows) {
            return tropical_matmul(a, b, MatmulOptions{threads, panel_rows});
        },
        py::arg("a"), py::arg("b"), py::arg("threads") = 0,
        py::arg("panel_rows") = 0, py::call_guard<py::gil_scoped_release>());
    m.def(
        "matrix_power",
        [](const TropicalMatrix& a, std::uint64_t n, int threads) {
            return tropical_pow(a, n, MatmulOptions{threads, 0});
        },
        py::arg("a"), py::arg("n"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
    m.def("scalar_shift", &scalar_shift, py::arg("c"), py::arg("a"));
    m.def("min_diagonal", &min_diagonal, py::arg("a"));
    m.def("matrix_equal_shifted", &matrix_equal_shifted, py::arg("a"),
          py::arg("b"));
    m.def(
        "write_matrix",
        [](const TropicalMatrix& a, const std::string& path) {
            write_matrix(a, path);
        },
        py::arg("a"), py::arg("path"));
    m.def(
        "read_matrix", [](const std::string& path) { return read_matrix(path); },
        py::arg("path"));

    // scan
    py::class_<Recurrence>(m, "Recurrence")
        .def_readonly("n0", &Recurrence::n0)
        .def_readonly("shift", &Recurrence::shift)
        .def("__repr__", [](const Recurrence& r) {
            std::ostringstream ss;
            ss << "Recurrence(n0=" << r.n0 << ", shift=" << r.shift << ")";
            return ss.str();
        });
    py::class_<LTable>(m, "LTable")
        .def_readonly("rows", &LTable::rows)
        .def_readonly("horizon", &LTable::horizon)
        .def_readonly("last_computed", &LTable::last_computed)
        .def_property_readonly("recurrence",
                               [](const LTable& t) -> py::object {
                                   if (t.recurrence) return py::cast(*t.recurrence);
                                   return py::none();
                               })
        .def_property_readonly("values",
                               [](const LTable& t) {
                                   py::dict out;
                                   for (const auto& [n, v] : t.values) {
                                       out[py::int_(n)] = v;
                                   }
                                   return out;
                               })
        .def("at", &LTable::at, py::arg("n"));
    m.def(
        "scan_l",
        [](int rows, std::uint64_t horizon, int threads,
           const std::string& checkpoint_dir, const std::string& resume_dir,
           int checkpoint_every) {
            ScanOptions opts;
            opts.threads = threads;
            opts.checkpoint_every = checkpoint_every;
            if (!checkpoint_dir.empty()) opts.checkpoint_dir = checkpoint_dir;
            if (!resume_dir.empty()) opts.resume_dir = resume_dir;
            return scan_L(rows, horizon, opts);
        },
        py::arg("rows"), py::arg("horizon"), py::arg("threads") = 0,
        py::arg("checkpoint_dir") = "", py::arg("resume_dir") = "",
        py::arg("checkpoint_every") = 10,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "write_ltable_csv",
        [](const LTable& t, const std::string& path) { write_ltable_csv(t, path); },
        py::arg("table"), py::arg("path"));
    m.def(
        "read_ltable_csv",
        [](const std::string& path) { return read_ltable_csv(path); },
        py::arg("path"));

    // bounds
    m.def(
        "theorem_bound",
        [](int m_, int n_) { return theorem_bound({m_, n_}); }, py::arg("m"),
        py::arg("n"));
    m.def(
        "lower_bound_from_l",
        [](int m_, int n_, const LTable& t) {
            return lower_bound_from_L({m_, n_}, t);
        },
        py::arg("m"), py::arg("n"), py::arg("table"));
    m.def(
        "construction_upper_bound",
        [](int m_, int n_) {
            const ConstructionBound b = construction_upper_bound({m_, n_});
            return py::make_tuple(b.value, b.rounded);
        },
        py::arg("m"), py::arg("n"));
    m.def(
        "grid_upper_bound", [](int m_, int n_) { return grid_upper_bound({m_, n_}); },
        py::arg("m"), py::arg("n"));
    m.def(
        "grid_lower_bound", [](int m_, int n_) { return grid_lower_bound({m_, n_}); },
        py::arg("m"), py::arg("n"));
    m.def(
        "known_gamma",
        [](int m_, int n_) { return opt_int(known_gamma({m_, n_})); },
        py::arg("m"), py::arg("n"));
    m.def("is_exceptional_cycle_length", &is_exceptional_cycle_length,
          py::arg("n"));
    m.def(
        "bound_report",
        [](int m_, int n_, const LTable* table) {
            const BoundReport r = make_bound_report({m_, n_}, table);
            py::dict out;
            out["m"] = r.dims.m;
            out["n"] = r.dims.n;
            out["residue"] = r.residue;
            out["k"] = r.k;
            out["lower_new"] = opt_int(r.lower_new);
            out["lower_grid"] = opt_int(r.lower_grid);
            out["upper_construction"] = opt_int(r.upper_construction);
            out["upper_grid"] = opt_int(r.upper_grid);
            out["known_gamma"] = opt_int(r.known_gamma);
            out["flags"] = r.flags;
            return out;
        },
        py::arg("m"), py::arg("n"), py::arg("table") = nullptr);
    m.def(
        "diagonal_pattern_dominating_set",
        [](int m_, int n_) { return diagonal_pattern_dominating_set({m_, n_}); },
        py::arg("m"), py::arg("n"));

    // oracle
    m.def(
        "brute_force_gamma",
        [](int m_, int n_) { return brute_force_gamma({m_, n_}); }, py::arg("m"),
        py::arg("n"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "brute_force_wasted_min",
        [](int rows, int cols) {
            const WastedResult r = brute_force_wasted_min(rows, cols);
            py::dict out;
            out["wasted"] = r.wasted;
            out["closed_neighborhood_size"] = r.closed_neighborhood_size;
            out["witness"] = r.set.members;
            return out;
        },
        py::arg("rows"), py::arg("cols"));
    m.def(
        "is_dominating",
        [](int m_, int n_, std::vector<std::pair<int, int>> members) {
            return is_dominating(vertex_set(m_, n_, std::move(members)));
        },
        py::arg("m"), py::arg("n"), py::arg("members"));
    m.def(
        "closed_neighborhood",
        [](int m_, int n_, std::vector<std::pair<int, int>> members, bool outer) {
            return closed_neighborhood(vertex_set(m_, n_, std::move(members)),
                                       outer)
                .members;
        },
        py::arg("m"), py::arg("n"), py::arg("members"), py::arg("outer") = false);
    m.def(
        "wasted_domination",
        [](int m_, int n_, std::vector<std::pair<int, int>> members, bool outer) {
            return wasted_domination(vertex_set(m_, n_, std::move(members)),
                                     outer);
        },
        py::arg("m"), py::arg("n"), py::arg("members"), py::arg("outer") = false);
    m.def(
        "encode_words",
        [](int rows, int cols, std::vector<std::pair<int, int>> members) {
            const auto words =
                encode_words(vertex_set(rows, cols, std::move(members)));
            std::vector<std::string> out;
            out.reserve(words.size());
            for (const CorrectWord& w : words) out.push_back(w.str());
            return out;
        },
        py::arg("rows"), py::arg("cols"), py::arg("members"));
    m.def(
        "decode_words",
        [](const std::vector<std::string>& texts) {
            std::vector<CorrectWord> words;
            words.reserve(texts.size());
            for (const std::string& t : texts) words.push_back(word(t));
            return decode_words(words).members;
        },
        py::arg("words"));
    m.def(
        "verify",
        [](int rows, int cols) {
            std::ostringstream report;
            const bool ok = run_verification_suite(rows, cols, report);
            return py::make_tuple(ok, report.str());
        },
        py::arg("rows"), py::arg("cols"),
        "Runs the oracle cross-check suite; returns (all_passed, report_text).");
}
