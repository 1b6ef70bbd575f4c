#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "stralg/gen.hpp"
#include "stralg/io.hpp"

namespace {

using namespace stralg;

constexpr const char* kVersion = "stralg 0.1.0";

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("SyntaxError", "cannot read file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const Json& j, bool as_float) {
    if (!as_float) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    // render "num/den" strings as decimals for human tables
    std::function<Json(const Json&)> conv = [&](const Json& v) -> Json {
        if (v.is_string()) {
            const std::string& s = v.get_ref<const std::string&>();
            bool rational = !s.empty() && (std::isdigit(s[0]) || s[0] == '-');
            for (char c : s)
                if (!std::isdigit(c) && c != '/' && c != '-') rational = false;
            if (rational && s.find_first_of("0123456789") != std::string::npos)
                return rat_double(rat_parse(s));
            return v;
        }
        if (v.is_object()) {
            Json o = Json::object();
            for (auto it = v.begin(); it != v.end(); ++it) o[it.key()] = conv(it.value());
            return o;
        }
        if (v.is_array()) {
            Json a = Json::array();
            for (const auto& x : v) a.push_back(conv(x));
            return a;
        }
        return v;
    };
    std::cout << conv(j).dump(2) << '\n';
}

ParameterId make_param(const std::string& kind, Algebra R, const std::string& q_file,
                       const std::string& matrix_text) {
    ParameterId p;
    if (kind == "g") {
        p.kind = ParameterId::Kind::G;
    } else if (kind == "i") {
        p.kind = ParameterId::Kind::I;
    } else if (kind == "weight" || kind == "homL" || kind == "homR") {
        p.kind = kind == "weight" ? ParameterId::Kind::Weight
                                  : (kind == "homL" ? ParameterId::Kind::HomL
                                                    : ParameterId::Kind::HomR);
        if (q_file.empty()) fail("SyntaxError", "parameter '" + kind + "' needs --q <module file>");
        p.q = parse_module_file(slurp(q_file), R);
        if (p.q->components().size() == 1)
            p.q_label = component_label(p.q->components().front(), *R);
        else
            p.q_label = "sum";
    } else if (kind == "rank") {
        p.kind = ParameterId::Kind::RankA;
        if (matrix_text.empty()) fail("SyntaxError", "parameter 'rank' needs --matrix <text>");
        p.A = rmatrix_parse(matrix_text, R);
    } else {
        fail("SyntaxError", "unknown parameter kind '" + kind + "'");
    }
    return p;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"string algebra laboratory: exact ranks, pp dimensions, string graph statistics,"
                 " hyperfinite tilings and the constant-size parameter tester"};
    app.set_version_flag("--version", kVersion);

    std::string algebra_file, module_file, module_file2, strings_file, matrix_file, formula_file;
    std::string out_dir, bundle_file, estimates_file, q_file, matrix_text, param_kind, jordan_f;
    std::string eps_text = "1/10", delta_text = "1/20";
    uint64_t seed = 1;
    int radius = 2, jobs = 1, suite_s = 2, suite_h = 1;
    long samples = 100, trials = 100;
    int max_string_len = 4, band_dim_cap = 5, jordan_n = 1;
    bool as_float = false;
    std::string schema_name;

    app.add_flag("--float", as_float, "render rationals as decimals");
    app.add_option("--seed", seed, "seed for every random draw");
    app.add_option("--jobs", jobs, "worker threads for the census");
    app.add_option("--schema", schema_name, "print the JSON schema with this name and exit");
    app.fallthrough(); // global flags are accepted after a subcommand too

    auto* validate = app.add_subcommand("validate", "check the string algebra conditions");
    validate->add_option("algebra", algebra_file)->required();

    std::string extras_file;
    auto* rankc = app.add_subcommand("rank", "rank profile of a module against matrices");
    rankc->add_option("algebra", algebra_file)->required();
    rankc->add_option("module", module_file)->required();
    rankc->add_option("matrices", matrix_file, "matrix file; omit for the deterministic suite");
    rankc->add_option("--suite-s", suite_s);
    rankc->add_option("--suite-h", suite_h);
    rankc->add_option("--extras", extras_file, "extra matrices appended to the suite");

    auto* ppdim = app.add_subcommand("ppdim", "pp dimension of formulas on a module");
    ppdim->add_option("algebra", algebra_file)->required();
    ppdim->add_option("module", module_file)->required();
    ppdim->add_option("formula", formula_file)->required();

    auto* stats = app.add_subcommand("stats", "exact ball statistics of a string graph");
    stats->add_option("algebra", algebra_file)->required();
    stats->add_option("strings", strings_file)->required();
    stats->add_option("-r,--radius", radius);

    auto* sample = app.add_subcommand("sample", "sampled ball statistics with a Hoeffding bound");
    sample->add_option("algebra", algebra_file)->required();
    sample->add_option("strings", strings_file)->required();
    sample->add_option("-r,--radius", radius);
    sample->add_option("-n,--samples", samples);

    auto* tile = app.add_subcommand("tile", "hyperfinite tiling of module components");
    tile->add_option("algebra", algebra_file)->required();
    tile->add_option("module", module_file);
    tile->add_option("--eps", eps_text);
    tile->add_option("--jordan-f", jordan_f, "tile K[X]/f^n instead; coefficients [c0,c1,...]");
    tile->add_option("--jordan-n", jordan_n);

    auto* epsiso = app.add_subcommand("epsiso", "epsilon isomorphism certificate search");
    epsiso->add_option("algebra", algebra_file)->required();
    epsiso->add_option("moduleA", module_file)->required();
    epsiso->add_option("moduleB", module_file2)->required();
    epsiso->add_option("--eps", eps_text);

    auto* catalog = app.add_subcommand("catalog", "enumerate the tile catalog");
    catalog->add_option("algebra", algebra_file)->required();
    catalog->add_option("--max-string-len", max_string_len);
    catalog->add_option("--band-cap", band_dim_cap);
    catalog->add_option("--out", out_dir, "write module spec files plus an index here");

    auto* param = app.add_subcommand("param", "evaluate a module parameter");
    param->add_option("algebra", algebra_file)->required();
    param->add_option("module", module_file)->required();
    param->add_option("--kind", param_kind)->required();
    param->add_option("--q", q_file, "payload module for weight/homL/homR");
    param->add_option("--matrix", matrix_text, "payload matrix text for rank");

    auto* test = app.add_subcommand("test", "run the constant-size parameter tester");
    test->add_option("algebra", algebra_file)->required();
    test->add_option("--bundle", bundle_file, "tester bundle JSON (built fresh when absent)");
    test->add_option("--module", module_file, "module to test (exact ranks as estimates)");
    test->add_option("--estimates", estimates_file, "JSON array of rank estimates");
    test->add_option("--kind", param_kind, "parameter kind when building fresh")->default_val("g");
    test->add_option("--q", q_file);
    test->add_option("--matrix", matrix_text);
    test->add_option("--kappa", delta_text)->default_val("1/16");
    test->add_option("--max-string-len", max_string_len);
    test->add_option("--band-cap", band_dim_cap);

    auto* audit = app.add_subcommand("audit", "Sylvester axiom audit on random matrices");
    audit->add_option("algebra", algebra_file)->required();
    audit->add_option("module", module_file)->required();
    audit->add_option("--trials", trials);

    std::vector<std::string> sequence_files;
    auto* converge = app.add_subcommand("converge",
                                        "r(S,G_n) and ball-statistic trajectories as CSV");
    converge->add_option("algebra", algebra_file)->required();
    converge->add_option("strings", strings_file, "the S-words to track")->required();
    converge->add_option("sequence", sequence_files, "strings files, one graph per file")
        ->required()
        ->expected(-1);
    converge->add_option("-r,--radius", radius);

    auto* probe = app.add_subcommand("probe", "stability probe of a parameter, CSV report");
    probe->add_option("algebra", algebra_file)->required();
    probe->add_option("module", module_file)->required();
    probe->add_option("--kind", param_kind)->required();
    probe->add_option("--q", q_file);
    probe->add_option("--matrix", matrix_text);
    probe->add_option("--delta", eps_text, "relative trim budget")->default_val("1/10");
    probe->add_option("--trials", trials);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // malformed flags are parse errors
    }

    try {
        if (!schema_name.empty()) {
            std::cout << json_schema(schema_name) << '\n';
            return 0;
        }

        if (validate->parsed()) {
            Algebra R = parse_algebra_file(slurp(algebra_file));
            Json j;
            j["ok"] = true;
            j["dim"] = R->dim();
            j["nilpotency_bound"] = R->nilpotency_bound();
            Json basis = Json::array();
            for (const Path& p : R->path_basis()) basis.push_back(R->path_str(p));
            j["path_basis"] = basis;
            emit(j, as_float);
        } else if (rankc->parsed()) {
            Algebra R = parse_algebra_file(slurp(algebra_file));
            RModule M = parse_module_file(slurp(module_file), R);
            Json j;
            if (!matrix_file.empty()) {
                Json vals = Json::array();
                for (const RMatrix& A : parse_matrix_file(slurp(matrix_file), R)) {
                    Json row;
                    row["matrix"] = rmatrix_emit(A);
                    row["value"] = rat_str(rk(M, A));
                    vals.push_back(row);
                }
                j["values"] = vals;
            } else {
                std::vector<RMatrix> extras;
                if (!extras_file.empty()) extras = parse_matrix_file(slurp(extras_file), R);
                TestSuite suite = make_test_suite(R, suite_s, suite_h, std::move(extras));
                j = profile_json(profile(M, suite), suite);
            }
            emit(j, as_float);
        } else if (ppdim->parsed()) {
            Algebra R = parse_algebra_file(slurp(algebra_file));
            RModule M = parse_module_file(slurp(module_file), R);
            FormulaFile ff = parse_formula_file(slurp(formula_file), R);
            Json j;
            j["t"] = ff.phi.t;
            if (ff.psi) {
                PairDims d = pp_pair_dims(M, PPPair{ff.phi, *ff.psi});
                j["phi_dim"] = rat_str(d.phi);
                j["psi_dim"] = rat_str(d.psi);
                j["gap"] = rat_str(d.gap());
            } else {
                j["phi_dim"] = rat_str(pp_dim(M, ff.phi));
            }
            emit(j, as_float);
        } else if (stats->parsed()) {
            Algebra R = parse_algebra_file(slurp(algebra_file));
            StringGraph G = StringGraph::of_words(parse_strings_file(slurp(strings_file), *R), R);
            emit(stats_json(ball_stats(G, radius, jobs), *R), as_float);
        } else if (sample->parsed()) {
            Algebra R = parse_algebra_file(slurp(algebra_file));
            StringGraph G = StringGraph::of_words(parse_strings_file(slurp(strings_file), *R), R);
            emit(sampled_json(ball_stats_sampled(G, radius, samples, seed), *R), as_float);
        } else if (tile->parsed()) {
            Algebra R = parse_algebra_file(slurp(algebra_file));
            Rat eps = rat_parse(eps_text);
            Json out = Json::array();
            if (!jordan_f.empty()) {
                JordanTiling jt = tile_jordan(parse_poly(jordan_f), jordan_n, R->field(), eps);
                TilingCheck chk = verify_tiling(jt.tiling, {jt.x_action}, eps);
                Json j = tiling_json(jt.tiling);
                j["verified"] = chk.ok;
                out.push_back(j);
            } else {
                if (module_file.empty()) fail("SyntaxError", "tile needs a module file or --jordan-f");
                RModule M = parse_module_file(slurp(module_file), R);
                if (!M.has_components()) fail("UnsupportedRawModule", "tiling needs components");
                for (const Component& c : M.components()) {
                    Tiling t = c.is_band() ? tile_band_module(*c.band(), R, eps)
                                           : tile_string_module(*c.word(), R, eps);
                    RModule piece = c.is_band() ? RModule::band_module(*c.band(), R)
                                                : RModule::string_module(*c.word(), R);
                    TilingCheck chk = verify_tiling(t, module_operators(piece), eps);
                    Json j = tiling_json(t);
                    j["component"] = component_label(c, *R);
                    j["verified"] = chk.ok;
                    out.push_back(j);
                }
            }
            emit(out, as_float);
        } else if (epsiso->parsed()) {
            Algebra R = parse_algebra_file(slurp(algebra_file));
            RModule M = parse_module_file(slurp(module_file), R);
            RModule N = parse_module_file(slurp(module_file2), R);
            Rat eps = rat_parse(eps_text);
            EpsIsoOutcome o = epsilon_isomorphism_modules(M, N, eps);
            Json j;
            if (o.certificate) {
                bool ok = verify_certificate(graph_of_module(M), graph_of_module(N),
                                             *o.certificate, eps);
                j["certificate"] = certificate_json(*o.certificate);
                j["verified"] = ok;
            } else {
                j["certificate"] = nullptr;
                j["account"] = o.account;
            }
            emit(j, as_float);
        } else if (catalog->parsed()) {
            Algebra R = parse_algebra_file(slurp(algebra_file));
            TileCatalog cat = build_tile_catalog(R, max_string_len, band_dim_cap);
            Json index = Json::array();
            for (size_t i = 0; i < cat.tiles.size(); ++i) {
                Json tj;
                tj["label"] = cat.tiles[i].label;
                tj["dim"] = cat.tiles[i].mod.dim();
                std::string spec =
                    cat.tiles[i].comp.is_band()
                        ? "band: " + word_str(cat.tiles[i].comp.band()->word, *R) +
                              " ; f=" + cat.tiles[i].comp.band()->f.str() +
                              " ; n=" + std::to_string(cat.tiles[i].comp.band()->power)
                        : "string: " + word_str(*cat.tiles[i].comp.word(), *R);
                tj["spec"] = spec;
                if (!out_dir.empty()) {
                    std::string fname = "tile_" + std::to_string(i) + ".mod";
                    std::ofstream f(out_dir + "/" + fname);
                    f << spec << '\n';
                    tj["file"] = fname;
                }
                index.push_back(tj);
            }
            if (!out_dir.empty()) {
                std::ofstream f(out_dir + "/index.json");
                f << index.dump(2) << '\n';
            }
            emit(index, as_float);
        } else if (param->parsed()) {
            Algebra R = parse_algebra_file(slurp(algebra_file));
            RModule M = parse_module_file(slurp(module_file), R);
            ParameterId p = make_param(param_kind, R, q_file, matrix_text);
            Json j;
            j["parameter"] = p.name();
            j["value"] = rat_str(eval_parameter(p, M));
            if (p.kind == ParameterId::Kind::G) {
                j["G"] = gen_number(M);
            } else if (p.kind == ParameterId::Kind::I) {
                IndepResult r = indep_number(M, M.dim() <= 10);
                j["I_lower"] = r.lower;
                j["I_upper"] = r.upper;
                j["exact"] = r.exact;
            }
            emit(j, as_float);
        } else if (test->parsed()) {
            Algebra R = parse_algebra_file(slurp(algebra_file));
            Tester T = [&] {
                if (!bundle_file.empty())
                    return tester_from_json(Json::parse(slurp(bundle_file)), R);
                ParameterId p = make_param(param_kind, R, q_file, matrix_text);
                TesterConfig cfg;
                cfg.kappa = rat_parse(delta_text);
                cfg.max_string_len = max_string_len;
                cfg.band_dim_cap = band_dim_cap;
                return build_tester(p, R, cfg);
            }();
            std::vector<Rat> estimates;
            if (!module_file.empty()) {
                RModule M = parse_module_file(slurp(module_file), R);
                for (const RMatrix& A : T.suite.mats) estimates.push_back(rk(M, A));
            } else if (!estimates_file.empty()) {
                for (const auto& v : Json::parse(slurp(estimates_file)))
                    estimates.push_back(rat_parse(v.get<std::string>()));
            } else {
                fail("SyntaxError", "test needs --module or --estimates");
            }
            TestOutcome o = run_tester(T, estimates);
            Json j;
            j["bundle"] = tester_json(T);
            j["ok"] = o.ok;
            if (o.tile >= 0) {
                j["tile"] = T.catalog.tiles[static_cast<size_t>(o.tile)].label;
                j["value"] = rat_str(o.value);
                j["radius"] = rat_str(o.radius);
            }
            if (!o.flag.empty()) j["flag"] = o.flag;
            emit(j, as_float);
        } else if (audit->parsed()) {
            Algebra R = parse_algebra_file(slurp(algebra_file));
            RModule M = parse_module_file(slurp(module_file), R);
            emit(audit_json(sylvester_audit(M, trials, seed)), as_float);
        } else if (converge->parsed()) {
            Algebra R = parse_algebra_file(slurp(algebra_file));
            std::vector<StringWord> track;
            for (StringWord& w : parse_strings_file(slurp(strings_file), *R))
                if (!w.trivial()) track.push_back(std::move(w)); // r(S,G) needs |S| >= 1
            std::vector<StringGraph> graphs;
            for (const std::string& f : sequence_files)
                graphs.push_back(StringGraph::of_words(parse_strings_file(slurp(f), *R), R));
            ConvergenceReport rep = stringconvergence_check(graphs, track, radius);
            std::cout << "series,step,value\n";
            for (size_t w = 0; w < track.size(); ++w)
                for (size_t n = 0; n < rep.r_trajectories[w].size(); ++n)
                    std::cout << "r(S" << w << ")," << n << ','
                              << rat_str(rep.r_trajectories[w][n]) << '\n';
            for (size_t n = 0; n < rep.bs_steps.size(); ++n)
                std::cout << "bs_step," << n << ',' << rat_str(rep.bs_steps[n]) << '\n';
            for (size_t n = 0; n < rep.cauchy_modulus.size(); ++n)
                std::cout << "cauchy_modulus," << n << ',' << rat_str(rep.cauchy_modulus[n])
                          << '\n';
        } else if (probe->parsed()) {
            Algebra R = parse_algebra_file(slurp(algebra_file));
            RModule M = parse_module_file(slurp(module_file), R);
            ParameterId p = make_param(param_kind, R, q_file, matrix_text);
            StabilityReport rep = stability_probe(p, M, rat_parse(eps_text), trials, seed);
            std::cout << "series,index,value\n";
            for (size_t i = 0; i < rep.trims.size(); ++i)
                std::cout << "trim_eps," << i << ',' << rat_str(rep.trims[i].first) << "\n"
                          << "trim_dev," << i << ',' << rat_str(rep.trims[i].second) << '\n';
            for (size_t k = 0; k < rep.power_trajectory.size(); ++k)
                std::cout << "power," << k + 1 << ',' << rat_str(rep.power_trajectory[k]) << '\n';
        } else {
            std::cout << app.help() << '\n';
            return 1;
        }
    } catch (const Error& e) {
        Json j;
        j["error"] = e.code();
        j["message"] = e.what();
        std::cerr << j.dump(2) << '\n';
        return e.exit_class();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
