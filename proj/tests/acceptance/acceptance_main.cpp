// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  argv[1] is the CLI binary (used by the determinism criterion).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <vector>

#include "stralg/approx.hpp"
#include "stralg/gen.hpp"
#include "stralg/io.hpp"
#include "stralg/params.hpp"

using namespace stralg;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << detail << "\n";
    std::cout.flush();
    if (!ok) ++g_failures;
}

Algebra gp(uint32_t p) {
    Quiver Q;
    Q.vertices = {"v"};
    Q.arrows = {{"x", 0, 0}, {"y", 0, 0}};
    std::vector<Path> forbidden;
    for (auto pr : {std::pair<int, int>{0, 0}, {1, 1}, {0, 1}, {1, 0}}) {
        Path f;
        f.arrows = {pr.first, pr.second};
        forbidden.push_back(f);
    }
    return StringAlgebra::make(Q, forbidden, FiniteField::make(p, 1));
}

Algebra kronecker(uint32_t p) {
    Quiver Q;
    Q.vertices = {"1", "2"};
    Q.arrows = {{"a", 0, 1}, {"b", 0, 1}};
    return StringAlgebra::make(Q, {}, FiniteField::make(p, 1));
}

// ---------------------------------------------------------------------------

void criterion1_sylvester() {
    auto t0 = std::chrono::steady_clock::now();
    long violations = 0, modules = 0;
    for (Algebra R : {gp(2), gp(3), kronecker(2), kronecker(3)}) {
        Rng rng(0xC1);
        for (int i = 0; i < 25; ++i) {
            int cap = 20 + static_cast<int>(rng.below(181)); // dims spread up to 200
            RModule M = random_module_mix(R, rng, cap);
            if (M.dim() == 0) M = RModule::string_module(StringWord{0, {}}, R);
            ++modules;
            AuditReport rep = sylvester_audit(M, 50, 0xABC0 + static_cast<uint64_t>(i));
            if (!rep.ok) violations += static_cast<long>(rep.violations.size());
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(1, violations == 0 && secs < 60.0 && modules == 100,
           std::to_string(modules) + " modules x 50 triples, " + std::to_string(violations) +
               " violations, " + std::to_string(secs) + " s");
}

void criterion2_weight_identity() {
    long bad = 0, runs = 0;
    for (Algebra R : {gp(2), kronecker(2), gp(3), kronecker(3)}) {
        TestSuite suite = make_test_suite(R, 2, 1);
        Rng rng(0xC2);
        for (int i = 0; i < 25; ++i) {
            std::vector<std::pair<RModule, int>> comps;
            long parts = rng.range(1, 4);
            for (long j = 0; j < parts; ++j) {
                if (rng.chance(1, 4)) {
                    auto B = random_band(*R, rng, 12);
                    if (B) {
                        comps.push_back({RModule::band_module(*B, R),
                                         static_cast<int>(1 + rng.below(3))});
                        continue;
                    }
                }
                comps.push_back(
                    {RModule::string_module(random_string_word(*R, rng, rng.below(8)), R),
                     static_cast<int>(1 + rng.below(3))});
            }
            ++runs;
            if (!weight_identity_check(comps, suite).ok) ++bad;
        }
    }
    report(2, bad == 0 && runs == 100,
           std::to_string(runs) + " seeded mixtures, " + std::to_string(bad) + " mismatches");
}

void criterion3_pp_agreement() {
    long bad = 0, runs = 0;
    for (Algebra R : {gp(2), gp(3), kronecker(2), kronecker(3)}) {
        Rng rng(0xC3);
        int done = 0;
        while (done < 50) {
            RModule M = random_module_mix(R, rng, 20 + static_cast<int>(rng.below(80)));
            if (M.dim() == 0) continue;
            size_t n = 1 + rng.below(3);
            PPFormula phi;
            phi.A = random_rmatrix(R, rng, 1 + rng.below(3), n, 2);
            phi.t = 1 + rng.below(n);
            ++runs;
            ++done;
            try {
                pp_dim(M, phi);
            } catch (const Error&) {
                ++bad; // MethodDisagreement
            }
        }
    }
    report(3, bad == 0 && runs == 200,
           std::to_string(runs) + " seeded (M, phi), " + std::to_string(bad) + " disagreements");
}

void criterion4_string_counting() {
    long bad = 0, runs = 0;
    for (Algebra R : {gp(2), kronecker(2)}) {
        Rng rng(0xC4);
        int done = 0;
        while (done < 50) {
            StringWord S = random_string_word(*R, rng, 1 + rng.below(8));
            if (S.trivial()) continue;
            RModule N = random_string_sum(R, rng, 20 + static_cast<int>(rng.below(181)));
            StringGraph G = graph_of_module(N);
            PPPair pair = string_counting_pair(S, R);
            Rat gap = pp_pair_dims(N, pair).gap();
            long count = right_endpoint_count(S, G).count;
            ++runs;
            ++done;
            if (gap * N.dim() != count) ++bad;
        }
    }
    report(4, bad == 0 && runs == 100,
           std::to_string(runs) + " seeded (S, N), " + std::to_string(bad) + " mismatches");
}

void criterion5_weight_extraction() {
    long bad = 0, runs = 0;
    Algebra R = gp(2);
    Rng rng(0xC5);
    while (runs < 50) {
        StringWord S = random_string_word(*R, rng, 1 + rng.below(5));
        if (S.trivial()) continue;
        RModule Q = RModule::string_module(S, R);
        std::string qlabel = component_label(Q.components().front(), *R);
        PPPair pair = string_counting_pair(S, R);

        // other components on which the pair is silent (no embedded S-copy)
        int a = static_cast<int>(1 + rng.below(3));
        RModule M = RModule::power(Q, a);
        std::vector<RModule> others;
        for (long j = 0, parts = rng.range(0, 2); j < parts; ++j) {
            StringWord T = random_string_word(*R, rng, rng.below(6));
            StringGraph GT = StringGraph::of_words({T}, R);
            if (!T.trivial() && right_endpoint_count(S, GT).count > 0) continue;
            if (component_label(Component{canonical_word(T)}, *R) == qlabel) continue;
            RModule P = RModule::string_module(T, R);
            others.push_back(P);
            M = RModule::direct_sum(M, P);
        }
        ++runs;
        try {
            Rat via_pair = weight_from_isolating_pair(M, Q, pair, &others);
            Rat via_components = weight_of(M, qlabel);
            if (via_pair != via_components) ++bad;
        } catch (const Error&) {
            ++bad;
        }
    }
    report(5, bad == 0, std::to_string(runs) + " isolating instances, " + std::to_string(bad) +
                            " route mismatches");
}

void criterion6_trim_bound() {
    long bad = 0, runs = 0;
    for (Algebra R : {gp(2), kronecker(2)}) {
        TestSuite suite = make_test_suite(R, 2, 1);
        Rng rng(0xC6);
        int done = 0;
        while (done < 50) {
            RModule M = random_module_mix(R, rng, 20 + static_cast<int>(rng.below(100)));
            if (M.dim() < 4) continue;
            Matrix basis;
            switch (rng.below(3)) {
                case 0: { // drop the last component: a direct summand
                    int keep = M.dim() - component_dim(M.components().back(), *R);
                    if (keep == 0) continue;
                    basis = Matrix(R->field(), static_cast<size_t>(M.dim()),
                                   static_cast<size_t>(keep));
                    for (int i = 0; i < keep; ++i)
                        basis.at(static_cast<size_t>(i), static_cast<size_t>(i)) = 1;
                    break;
                }
                case 1: { // the radical
                    basis = radical_submodule(M);
                    break;
                }
                default: { // largest submodule inside a random coordinate subspace
                    size_t keep = static_cast<size_t>(M.dim()) - 1 - rng.below(3);
                    std::vector<size_t> idx(static_cast<size_t>(M.dim()));
                    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
                    for (size_t i = idx.size(); i > 1; --i)
                        std::swap(idx[i - 1], idx[rng.below(i)]);
                    Matrix U(R->field(), static_cast<size_t>(M.dim()), keep);
                    for (size_t c = 0; c < keep; ++c) U.at(idx[c], c) = 1;
                    basis = largest_submodule_inside(M, U);
                }
            }
            if (basis.cols() == 0) continue;
            ++runs;
            ++done;
            if (!trim_bound_check(M, basis, suite).ok) ++bad;
        }
    }
    report(6, bad == 0 && runs == 100,
           std::to_string(runs) + " submodule trims, " + std::to_string(bad) + " bound failures");
}

void criterion7_tilings() {
    long bad = 0, runs = 0;
    Algebra D = [&] { // deep loop algebra: long band words exist here
        Quiver Q;
        Q.vertices = {"v"};
        Q.arrows = {{"x", 0, 0}, {"y", 0, 0}};
        std::vector<Path> forbidden;
        Path xxx, yy, xy, yx;
        xxx.arrows = {0, 0, 0};
        yy.arrows = {1, 1};
        xy.arrows = {0, 1};
        yx.arrows = {1, 0};
        for (const Path& f : {xxx, yy, xy, yx}) forbidden.push_back(f);
        return StringAlgebra::make(Q, forbidden, FiniteField::make(2, 1));
    }();

    Rng rng(0xC7);
    std::vector<Algebra> algs = {gp(2), kronecker(2), D};
    while (runs < 100) {
        Algebra R = algs[rng.below(algs.size())];
        Rat eps(1, 2 + static_cast<long>(rng.below(6)));
        switch (rng.below(3)) {
            case 0: {
                StringWord w = random_string_word(*R, rng, rng.below(120));
                Tiling t = tile_string_module(w, R, eps);
                if (!verify_tiling(t, module_operators(RModule::string_module(w, R)), eps).ok)
                    ++bad;
                ++runs;
                break;
            }
            case 1: {
                auto B = random_band(*R, rng, 20 + static_cast<int>(rng.below(60)));
                if (!B) break;
                Tiling t = tile_band_module(*B, R, eps);
                if (!verify_tiling(t, module_operators(RModule::band_module(*B, R)), eps).ok)
                    ++bad;
                ++runs;
                break;
            }
            default: {
                Field K = R->field();
                std::vector<Poly> irr;
                for (const Poly& f : monic_polys_of_degree(1 + static_cast<int>(rng.below(2)), *K))
                    if (f.coeff(0) != 0 && poly_is_irreducible(f, *K)) irr.push_back(f);
                if (irr.empty()) break;
                Poly f = irr[rng.below(irr.size())];
                int n = 1 + static_cast<int>(rng.below(40));
                JordanTiling jt = tile_jordan(f, n, K, eps);
                if (!verify_tiling(jt.tiling, {jt.x_action}, eps).ok) ++bad;
                ++runs;
            }
        }
    }
    report(7, bad == 0, std::to_string(runs) + " tilings verified, " + std::to_string(bad) +
                            " invariant failures");
}

void criterion8_desk_probe() {
    // N is M with components deleted or replaced, total perturbation <=
    // delta of the dimension; the documented schedule is eps = 2 delta
    const Rat delta(1, 20);
    const Rat eps = 2 * delta;
    long ok = 0, runs = 0;
    for (Algebra R : {gp(2), kronecker(2)}) {
        Rng rng(0xC8);
        int done = 0;
        while (done < 50) {
            RModule M = random_string_sum(R, rng, 100 + static_cast<int>(rng.below(101)));
            if (M.dim() < 40) continue;
            long budget = (delta * M.dim()).convert_to<long>();
            RModule N = RModule::zero(R);
            long removed = 0;
            for (const Component& c : M.components()) {
                int d = component_dim(c, *R);
                if (removed + d <= budget && rng.chance(1, 3)) {
                    removed += d; // delete this component
                    if (rng.chance(1, 2)) {
                        // replace it with fresh material of the same size
                        StringWord w = random_string_word(*R, rng, static_cast<size_t>(d) - 1);
                        N = RModule::direct_sum(N, RModule::string_module(w, R));
                    }
                    continue;
                }
                N = RModule::direct_sum(N, RModule::string_module(*c.word(), R));
            }
            if (N.dim() == 0) continue;
            ++runs;
            ++done;
            EpsIsoOutcome out = epsilon_isomorphism_modules(M, N, eps);
            if (out.certificate &&
                verify_certificate(graph_of_module(M), graph_of_module(N), *out.certificate, eps))
                ++ok;
        }
    }
    report(8, ok == 100 && runs == 100,
           std::to_string(ok) + "/" + std::to_string(runs) +
               " certificates produced and verified at eps = " + rat_str(eps));
}

void criterion9_nakayama() {
    long bad = 0, modules = 0;
    for (Algebra R : {gp(2), kronecker(2)}) {
        // complete list of indecomposables of dim <= 6
        TileCatalog cat = build_tile_catalog(R, 6, 7);
        std::vector<const TileCatalog::Tile*> tiles;
        for (const auto& t : cat.tiles)
            if (t.mod.dim() <= 6) tiles.push_back(&t);

        // every multiset with total dimension <= 6, depth-first
        std::function<void(size_t, int, const RModule&)> enumerate =
            [&](size_t from, int dim_left, const RModule& acc) {
                if (acc.dim() > 0) {
                    ++modules;
                    if (gen_number(acc) != gen_number_bruteforce(acc)) ++bad;
                }
                for (size_t i = from; i < tiles.size(); ++i) {
                    if (tiles[i]->mod.dim() > dim_left) continue;
                    enumerate(i, dim_left - tiles[i]->mod.dim(),
                              acc.dim() == 0 ? tiles[i]->mod
                                             : RModule::direct_sum(acc, tiles[i]->mod));
                }
            };
        enumerate(0, 6, RModule::zero(R));
    }
    report(9, bad == 0, std::to_string(modules) + " modules of dim <= 6 enumerated, " +
                            std::to_string(bad) + " Nakayama/brute-force mismatches");
}

void criterion10_tester() {
    Algebra R = gp(2);
    const Rat kappa(1, 16);
    const Rat eps_accept(1, 10);
    TesterConfig cfg;
    cfg.kappa = kappa;
    cfg.max_string_len = 3;
    cfg.band_dim_cap = 5;

    // the four parameters under test: g, weight(M(x)), homL(simple), rank([[x]])
    std::vector<ParameterId> params;
    {
        ParameterId pg;
        pg.kind = ParameterId::Kind::G;
        params.push_back(pg);
        ParameterId pw;
        pw.kind = ParameterId::Kind::Weight;
        StringWord wx;
        wx.letters.push_back(Letter{0, false});
        pw.q = RModule::string_module(wx, R);
        pw.q_label = component_label(pw.q->components().front(), *R);
        params.push_back(pw);
        ParameterId ph;
        ph.kind = ParameterId::Kind::HomL;
        StringWord at_v;
        at_v.vertex = 0;
        ph.q = RModule::string_module(at_v, R);
        ph.q_label = component_label(ph.q->components().front(), *R);
        params.push_back(ph);
        ParameterId pr;
        pr.kind = ParameterId::Kind::RankA;
        pr.A = rmatrix_parse("[[x]]", R);
        params.push_back(pr);
    }

    std::vector<Tester> testers;
    for (const ParameterId& p : params) testers.push_back(build_tester(p, R, cfg));
    const Tester& T0 = testers.front();

    // tiles admitting unambiguous recovery under small noise: profile gap to
    // every other tile comfortably above the noise shift plus kappa
    const Rat noise(1, 100);
    Rat needed_gap = 4 * Rat(2) * noise + kappa;
    std::vector<size_t> eligible;
    for (size_t j = 0; j < T0.catalog.tiles.size(); ++j) {
        Rat min_gap;
        bool first = true;
        for (size_t k = 0; k < T0.catalog.tiles.size(); ++k) {
            if (j == k) continue;
            Rat gap = 0;
            for (size_t i = 0; i < T0.suite.mats.size(); ++i)
                gap = std::max(gap, rat_abs(T0.tile_profiles[j][i] - T0.tile_profiles[k][i]));
            if (first || gap < min_gap) min_gap = gap;
            first = false;
        }
        if (first || min_gap > needed_gap) eligible.push_back(j);
    }

    long bad = 0, runs = 0;
    Rng rng(0xC10);
    while (runs < 100 && !eligible.empty()) {
        size_t j = eligible[rng.below(eligible.size())];
        const RModule& Q = T0.catalog.tiles[j].mod;
        int c = std::max(2, 100 / Q.dim());
        RModule M = RModule::power(Q, c);
        if (rng.chance(1, 2)) {
            long allowed = ((noise * M.dim()) / (1 - noise)).convert_to<long>();
            if (allowed >= 1) {
                StringWord at_v;
                at_v.vertex = 0;
                M = RModule::direct_sum(M, RModule::string_module(at_v, R));
            }
        }
        ++runs;
        std::vector<Rat> est;
        for (const RMatrix& A : T0.suite.mats) est.push_back(rk(M, A));
        for (size_t pi = 0; pi < params.size(); ++pi) {
            TestOutcome out = run_tester(testers[pi], est);
            if (!out.ok) {
                ++bad;
                continue;
            }
            Rat exact = eval_parameter(params[pi], M);
            if (rat_abs(out.value - exact) > eps_accept) ++bad;
        }
    }

    // adversarial controls: balanced mixtures of far-apart tiles must flag
    long controls = 0, flagged = 0;
    Rng crng(0xC11);
    int attempts = 0;
    while (controls < 20 && eligible.size() >= 2 && ++attempts < 4000) {
        size_t j = eligible[crng.below(eligible.size())];
        size_t k = eligible[crng.below(eligible.size())];
        if (j == k) continue;
        const RModule& Qj = T0.catalog.tiles[j].mod;
        const RModule& Qk = T0.catalog.tiles[k].mod;
        RModule M =
            RModule::direct_sum(RModule::power(Qj, Qk.dim()), RModule::power(Qk, Qj.dim()));
        std::vector<Rat> est;
        for (const RMatrix& A : T0.suite.mats) est.push_back(rk(M, A));
        // construction check: the mixture really is far from every tile
        Rat min_radius;
        bool first = true;
        for (size_t t = 0; t < T0.catalog.tiles.size(); ++t) {
            Rat radius = 0;
            for (size_t i = 0; i < est.size(); ++i)
                radius = std::max(radius, rat_abs(T0.tile_profiles[t][i] - est[i]));
            if (first || radius < min_radius) min_radius = radius;
            first = false;
        }
        if (min_radius <= kappa) continue;
        ++controls;
        TestOutcome out = run_tester(T0, est);
        if (!out.ok && out.flag == "NoTileWithinKappa") ++flagged;
    }

    report(10, bad == 0 && runs == 100 && flagged == controls && controls == 20,
           std::to_string(runs) + " tiled modules x 4 parameters, " + std::to_string(bad) +
               " out-of-tolerance; " + std::to_string(flagged) + "/" + std::to_string(controls) +
               " adversarial controls flagged");
}

void criterion11_sampling() {
    Algebra R = gp(2);
    // a fixed graph with (a hair over) 10^4 vertices
    Rng build(0xC11AB);
    std::vector<StringWord> words;
    size_t vertices = 0;
    while (vertices < 10000) {
        StringWord w = random_string_word(*R, build, 1 + build.below(120));
        words.push_back(w);
        vertices += w.length() + 1;
    }
    StringGraph G = StringGraph::of_words(words, R);

    const long samples = 400;
    const double delta = 0.05;
    double bound = hoeffding_epsilon(delta, samples);
    const int seeds = 200;

    bool ok = true;
    std::string detail;
    for (int r = 1; r <= 3; ++r) {
        StatProfile exact = ball_stats(G, r);
        std::map<BallType, int> exceed;
        for (int s = 0; s < seeds; ++s) {
            SampledStats est =
                ball_stats_sampled(G, r, samples, 0xBEEF + static_cast<uint64_t>(s));
            for (const auto& [type, p] : exact.freq) {
                Rat phat = est.profile.freq.count(type) ? est.profile.freq.at(type) : Rat(0);
                if (rat_double(rat_abs(phat - p)) > bound) ++exceed[type];
            }
        }
        for (const auto& [type, count] : exceed) {
            if (count > seeds * 8 / 100) {
                ok = false;
                detail = "a type exceeded the bound " + std::to_string(count) + "/200 times at r=" +
                         std::to_string(r);
            }
        }
    }
    report(11, ok,
           ok ? "all ball types within the Hoeffding budget over 200 seeds (r <= 3)" : detail);
}

void criterion12_determinism(const std::string& cli) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "stralg_accept";
    fs::create_directories(dir);
    {
        std::ofstream alg(dir / "gp.alg");
        alg << "field 2 1\nvertices v\narrow x: v -> v\narrow y: v -> v\n"
            << "forbid x x\nforbid y y\nforbid x y\nforbid y x\n";
        std::ofstream mod(dir / "m.mod");
        mod << "string: x y^-1 x\nstring: x\n";
        std::ofstream mod2(dir / "n.mod");
        mod2 << "string: x y^-1 x\n";
        std::ofstream words(dir / "w.txt");
        words << "x y^-1 x\ny\n@v\n";
        std::ofstream mat(dir / "a.mat");
        mat << "[[x]]\n[[e_v, -x],[0, e_v]]\n";
        std::ofstream formula(dir / "f.pp");
        formula << "t=1\nphi: [[x, -1]]\npsi: [[x, -1],[0, 1]]\n";
    }
    auto run = [&](const std::string& args) {
        std::string cmd = cli + " " + args + " 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        std::string out;
        if (pipe) {
            char buf[4096];
            size_t n;
            while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
            pclose(pipe);
        }
        return out;
    };
    std::string a = (dir / "gp.alg").string();
    std::vector<std::string> cmds = {
        "validate " + a,
        "rank " + a + " " + (dir / "m.mod").string(),
        "rank " + a + " " + (dir / "m.mod").string() + " " + (dir / "a.mat").string(),
        "stats " + a + " " + (dir / "w.txt").string() + " -r 2",
        "sample " + a + " " + (dir / "w.txt").string() + " -r 2 -n 50 --seed 7",
        "param " + a + " " + (dir / "m.mod").string() + " --kind g",
        "tile " + a + " " + (dir / "m.mod").string() + " --eps 1/3",
        "epsiso " + a + " " + (dir / "m.mod").string() + " " + (dir / "n.mod").string() +
            " --eps 1/2",
        "catalog " + a + " --max-string-len 3 --band-cap 5",
        "test " + a + " --module " + (dir / "n.mod").string() + " --kind g",
        "audit " + a + " " + (dir / "n.mod").string() + " --trials 20 --seed 5",
        "ppdim " + a + " " + (dir / "n.mod").string() + " " + (dir / "f.pp").string(),
        "probe " + a + " " + (dir / "m.mod").string() + " --kind g --trials 5 --seed 3",
        "converge " + a + " " + (dir / "w.txt").string() + " " + (dir / "w.txt").string() + " " +
            (dir / "w.txt").string() + " -r 2",
    };
    long mismatches = 0, empties = 0;
    for (const std::string& c : cmds) {
        std::string first = run(c), second = run(c);
        if (first.empty()) ++empties;
        if (first != second) ++mismatches;
    }
    report(12, mismatches == 0 && empties == 0,
           std::to_string(cmds.size()) + " commands run twice, " + std::to_string(mismatches) +
               " byte differences, " + std::to_string(empties) + " empty outputs");
}

} // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "./stralg";
    try {
        criterion1_sylvester();
        criterion2_weight_identity();
        criterion3_pp_agreement();
        criterion4_string_counting();
        criterion5_weight_extraction();
        criterion6_trim_bound();
        criterion7_tilings();
        criterion8_desk_probe();
        criterion9_nakayama();
        criterion10_tester();
        criterion11_sampling();
        criterion12_determinism(cli);
    } catch (const std::exception& e) {
        std::cout << "FAIL (exception): " << e.what() << "\n";
        return 1;
    }
    std::cout << (g_failures == 0
                      ? "ACCEPTANCE: all criteria passed"
                      : "ACCEPTANCE: " + std::to_string(g_failures) + " criteria failed")
              << "\n";
    return g_failures == 0 ? 0 : 1;
}
