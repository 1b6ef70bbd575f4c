#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stralg/approx.hpp"
#include "stralg/gen.hpp"
#include "stralg/io.hpp"
#include "stralg/params.hpp"

namespace py = pybind11;
using namespace stralg;

namespace {

// exact rationals cross the boundary as fractions.Fraction; the leaked
// handles keep interpreter shutdown from destroying py objects after the GIL
// is gone
py::object to_fraction(const Rat& r) {
    static auto* fraction = new py::object(py::module_::import("fractions").attr("Fraction"));
    return (*fraction)(rat_str(r));
}

Rat from_fraction(const py::object& o) {
    return rat_parse(py::str(o).cast<std::string>());
}

py::object json_to_py(const Json& j) {
    static auto* loads = new py::object(py::module_::import("json").attr("loads"));
    return (*loads)(j.dump());
}

struct PyAlgebra {
    Algebra R;
};

struct PyModule {
    RModule M;
};

PPFormula formula_from_text(const PyAlgebra& A, const std::string& matrix, size_t t) {
    PPFormula f;
    f.A = rmatrix_parse(matrix, A.R);
    f.t = t;
    return f;
}

} // namespace

PYBIND11_MODULE(_stralg, m) {
    m.doc() = "string algebra laboratory: exact ranks, pp dimensions, string graph "
              "statistics, hyperfinite tilings and the constant-size parameter tester";

    py::register_exception<Error>(m, "StralgError");

    py::class_<PyAlgebra>(m, "Algebra")
        .def_static(
            "from_spec", [](const std::string& text) { return PyAlgebra{parse_algebra_file(text)}; },
            py::arg("text"), "Parse an algebra spec (field/vertices/arrow/forbid lines).")
        .def_property_readonly("dim", [](const PyAlgebra& a) { return a.R->dim(); })
        .def_property_readonly("nilpotency_bound",
                               [](const PyAlgebra& a) { return a.R->nilpotency_bound(); })
        .def_property_readonly("path_basis",
                               [](const PyAlgebra& a) {
                                   std::vector<std::string> out;
                                   for (const Path& p : a.R->path_basis())
                                       out.push_back(a.R->path_str(p));
                                   return out;
                               })
        .def("spec", [](const PyAlgebra& a) { return emit_algebra_file(*a.R); });

    py::class_<PyModule>(m, "Module")
        .def_static(
            "from_spec",
            [](const PyAlgebra& A, const std::string& text) {
                return PyModule{parse_module_file(text, A.R)};
            },
            py::arg("algebra"), py::arg("text"),
            "Parse a module spec (string:/band:/raw: lines, direct sum of all).")
        .def_static("string_module",
                    [](const PyAlgebra& A, const std::string& word) {
                        return PyModule{RModule::string_module(word_parse(word, *A.R), A.R)};
                    })
        .def_static("band_module",
                    [](const PyAlgebra& A, const std::string& word,
                       const std::vector<int>& f_coeffs, int power) {
                        BandData B;
                        B.word = word_parse(word, *A.R);
                        std::vector<Felt> c(f_coeffs.begin(), f_coeffs.end());
                        B.f = Poly(std::move(c));
                        B.power = power;
                        return PyModule{RModule::band_module(B, A.R)};
                    })
        .def_property_readonly("dim", [](const PyModule& s) { return s.M.dim(); })
        .def_property_readonly("components",
                               [](const PyModule& s) {
                                   std::vector<std::string> out;
                                   for (const Component& c : s.M.components())
                                       out.push_back(component_label(c, *s.M.algebra()));
                                   return out;
                               })
        .def("direct_sum",
             [](const PyModule& s, const PyModule& o) {
                 return PyModule{RModule::direct_sum(s.M, o.M)};
             })
        .def("power", [](const PyModule& s, int k) { return PyModule{RModule::power(s.M, k)}; })
        .def("check", [](const PyModule& s) {
            ModuleCheck c = module_check(s.M, *s.M.algebra());
            return py::make_tuple(c.ok, c.violation);
        });

    m.def(
        "rk",
        [](const PyModule& M, const std::string& matrix) {
            return to_fraction(rk(M.M, rmatrix_parse(matrix, M.M.algebra())));
        },
        py::arg("module"), py::arg("matrix"),
        "Normalized Sylvester rank of an R-matrix in the bracket grammar.");

    m.def(
        "profile",
        [](const PyModule& M, int s, int h) {
            TestSuite suite = make_test_suite(M.M.algebra(), s, h);
            RankProfile p = profile(M.M, suite);
            py::dict out;
            for (size_t i = 0; i < p.values.size(); ++i)
                out[py::str(suite.names[i])] = to_fraction(p.values[i]);
            return out;
        },
        py::arg("module"), py::arg("s") = 2, py::arg("h") = 1,
        "Rank profile against the deterministic test suite.");

    m.def(
        "sylvester_audit",
        [](const PyModule& M, long trials, uint64_t seed) {
            AuditReport r = sylvester_audit(M.M, trials, seed);
            return py::make_tuple(r.ok, r.violations);
        },
        py::arg("module"), py::arg("trials") = 50, py::arg("seed") = 1);

    m.def(
        "pp_dim",
        [](const PyModule& M, const PyAlgebra& A, const std::string& matrix, size_t t) {
            return to_fraction(pp_dim(M.M, formula_from_text(A, matrix, t)));
        },
        py::arg("module"), py::arg("algebra"), py::arg("matrix"), py::arg("t") = 1,
        "D_M(phi), cross-checked against the rank formula.");

    m.def(
        "string_count",
        [](const PyModule& N, const PyAlgebra& A, const std::string& word) {
            PPPair pair = string_counting_pair(word_parse(word, *A.R), A.R);
            Rat gap = pp_pair_dims(N.M, pair).gap();
            return (gap * N.M.dim()).convert_to<long>();
        },
        py::arg("module"), py::arg("algebra"), py::arg("word"),
        "dim N(phi_S) - dim N(psi_S): the number of right endvertices of S.");

    m.def(
        "right_endpoint_count",
        [](const PyAlgebra& A, const std::string& word, const std::vector<std::string>& graph) {
            std::vector<StringWord> ws;
            for (const std::string& w : graph) ws.push_back(word_parse(w, *A.R));
            StringGraph G = StringGraph::of_words(ws, A.R);
            EndpointCount ec = right_endpoint_count(word_parse(word, *A.R), G);
            return py::make_tuple(ec.count, to_fraction(ec.density));
        },
        py::arg("algebra"), py::arg("word"), py::arg("graph_words"));

    m.def(
        "ball_stats",
        [](const PyAlgebra& A, const std::vector<std::string>& words, int radius) {
            std::vector<StringWord> ws;
            for (const std::string& w : words) ws.push_back(word_parse(w, *A.R));
            StatProfile p = ball_stats(StringGraph::of_words(ws, A.R), radius);
            py::dict out;
            for (const auto& [type, f] : p.freq) out[py::str(type.str(*A.R))] = to_fraction(f);
            return out;
        },
        py::arg("algebra"), py::arg("words"), py::arg("radius") = 2);

    m.def(
        "ball_stats_sampled",
        [](const PyAlgebra& A, const std::vector<std::string>& words, int radius, long samples,
           uint64_t seed, double delta) {
            std::vector<StringWord> ws;
            for (const std::string& w : words) ws.push_back(word_parse(w, *A.R));
            SampledStats s =
                ball_stats_sampled(StringGraph::of_words(ws, A.R), radius, samples, seed, delta);
            py::dict freq;
            for (const auto& [type, f] : s.profile.freq)
                freq[py::str(type.str(*A.R))] = to_fraction(f);
            return py::make_tuple(freq, s.hoeffding_eps);
        },
        py::arg("algebra"), py::arg("words"), py::arg("radius") = 2, py::arg("samples") = 100,
        py::arg("seed") = 1, py::arg("delta") = 0.05);

    m.def(
        "tile",
        [](const PyModule& M, const py::object& eps) {
            if (!M.M.has_components()) fail("UnsupportedRawModule", "tiling needs components");
            Rat e = from_fraction(eps);
            py::list out;
            for (const Component& c : M.M.components()) {
                Algebra R = M.M.algebra();
                Tiling t = c.is_band() ? tile_band_module(*c.band(), R, e)
                                       : tile_string_module(*c.word(), R, e);
                RModule piece = c.is_band() ? RModule::band_module(*c.band(), R)
                                            : RModule::string_module(*c.word(), R);
                Json j = tiling_json(t);
                j["component"] = component_label(c, *R);
                j["verified"] = verify_tiling(t, module_operators(piece), e).ok;
                out.append(json_to_py(j));
            }
            return out;
        },
        py::arg("module"), py::arg("eps"),
        "Hyperfinite tiling of each component, re-verified independently.");

    m.def(
        "tile_jordan",
        [](int p, int k, const std::vector<int>& f_coeffs, int n, const py::object& eps) {
            Field K = FiniteField::make(static_cast<uint32_t>(p), static_cast<uint32_t>(k));
            std::vector<Felt> c(f_coeffs.begin(), f_coeffs.end());
            JordanTiling jt = tile_jordan(Poly(std::move(c)), n, K, from_fraction(eps));
            Json j = tiling_json(jt.tiling);
            j["verified"] = verify_tiling(jt.tiling, {jt.x_action}, from_fraction(eps)).ok;
            return json_to_py(j);
        },
        py::arg("p"), py::arg("k"), py::arg("f"), py::arg("n"), py::arg("eps"));

    m.def(
        "epsilon_isomorphism",
        [](const PyModule& M, const PyModule& N, const py::object& eps) -> py::object {
            Rat e = from_fraction(eps);
            EpsIsoOutcome out = epsilon_isomorphism_modules(M.M, N.M, e);
            if (!out.certificate) return py::none();
            bool ok = verify_certificate(graph_of_module(M.M), graph_of_module(N.M),
                                         *out.certificate, e);
            Json j = certificate_json(*out.certificate);
            j["verified"] = ok;
            return json_to_py(j);
        },
        py::arg("module_a"), py::arg("module_b"), py::arg("eps"),
        "Certificate dict, or None when no certificate exists at this eps.");

    m.def(
        "epsilon_tiles",
        [](const PyModule& A, const PyModule& B, const py::object& eps) {
            EpsTilesResult r = epsilon_tiles(A.M, B.M, from_fraction(eps));
            return py::make_tuple(r.ok, r.k, to_fraction(r.covered));
        },
        py::arg("tile"), py::arg("module"), py::arg("eps"));

    m.def(
        "catalog",
        [](const PyAlgebra& A, int max_string_len, int band_dim_cap) {
            TileCatalog cat = build_tile_catalog(A.R, max_string_len, band_dim_cap);
            py::list out;
            for (const auto& t : cat.tiles)
                out.append(py::make_tuple(t.label, t.mod.dim()));
            return out;
        },
        py::arg("algebra"), py::arg("max_string_len") = 4, py::arg("band_dim_cap") = 5);

    m.def("gen_number", [](const PyModule& M) { return gen_number(M.M); });
    m.def(
        "indep_number",
        [](const PyModule& M, bool exact) {
            IndepResult r = indep_number(M.M, exact);
            return py::make_tuple(r.lower, r.upper, r.exact);
        },
        py::arg("module"), py::arg("exact") = true);
    m.def("weight", [](const PyModule& M, const std::string& label) {
        return to_fraction(weight_of(M.M, label));
    });
    m.def("hom_l", [](const PyModule& Q, const PyModule& M) {
        return to_fraction(hom_param_L(Q.M, M.M));
    });
    m.def("hom_r", [](const PyModule& Q, const PyModule& M) {
        return to_fraction(hom_param_R(Q.M, M.M));
    });

    m.def(
        "build_and_run_tester",
        [](const PyAlgebra& A, const std::string& kind, const PyModule& M, const py::object& kappa,
           int max_string_len, int band_dim_cap) {
            ParameterId p;
            if (kind == "g")
                p.kind = ParameterId::Kind::G;
            else if (kind == "i")
                p.kind = ParameterId::Kind::I;
            else
                fail("SyntaxError", "tester kinds here: 'g' or 'i'");
            TesterConfig cfg;
            cfg.kappa = from_fraction(kappa);
            cfg.max_string_len = max_string_len;
            cfg.band_dim_cap = band_dim_cap;
            Tester T = build_tester(p, A.R, cfg);
            std::vector<Rat> est;
            for (const RMatrix& mat : T.suite.mats) est.push_back(rk(M.M, mat));
            TestOutcome o = run_tester(T, est);
            py::dict out;
            out["ok"] = o.ok;
            out["flag"] = o.flag;
            if (o.tile >= 0) {
                out["tile"] = T.catalog.tiles[static_cast<size_t>(o.tile)].label;
                out["value"] = to_fraction(o.value);
                out["radius"] = to_fraction(o.radius);
            }
            return out;
        },
        py::arg("algebra"), py::arg("kind"), py::arg("module"), py::arg("kappa"),
        py::arg("max_string_len") = 4, py::arg("band_dim_cap") = 5,
        "Assemble the constant-size tester and run it on exact rank estimates.");

    m.def(
        "random_string_sum",
        [](const PyAlgebra& A, uint64_t seed, int dim_cap) {
            Rng rng(seed);
            return PyModule{random_string_sum(A.R, rng, dim_cap)};
        },
        py::arg("algebra"), py::arg("seed"), py::arg("dim_cap") = 60);
}
