#include <doctest.h>

#include "fixtures.hpp"
#include "stralg/gen.hpp"
#include "stralg/params.hpp"

using namespace stralg;
using namespace stralg::fixtures;

TEST_CASE("generating numbers") {
    Algebra R = gp_algebra();

    RModule reg = RModule::regular(R);
    CHECK(gen_number(reg) == 1); // cyclic

    RModule Mx = RModule::string_module(word(*R, "x"), R);
    CHECK(gen_number(Mx) == 1);
    CHECK(gen_number(RModule::power(Mx, 2)) == 2);

    RModule simple = RModule::string_module(word(*R, "@v"), R);
    CHECK(gen_number(simple) == 1);

    // Nakayama count equals the exhaustive search
    CHECK(gen_number_bruteforce(RModule::power(Mx, 2)) == 2);
    CHECK(gen_number_bruteforce(reg) == 1);
    CHECK(gen_number_bruteforce(RModule::power(simple, 3)) == 3);

    Rng rng(14);
    for (int t = 0; t < 8; ++t) {
        RModule M = random_module_mix(R, rng, 6);
        if (M.dim() == 0 || M.dim() > 6) continue;
        CHECK(gen_number(M) == gen_number_bruteforce(M));
    }

    // subadditivity under direct sums
    Rng rng2(15);
    for (int t = 0; t < 10; ++t) {
        RModule A = random_string_sum(R, rng2, 12);
        RModule B = random_string_sum(R, rng2, 12);
        CHECK(gen_number(RModule::direct_sum(A, B)) <= gen_number(A) + gen_number(B));
    }
}

TEST_CASE("independence numbers") {
    Algebra R = gp_algebra();
    RModule reg = RModule::regular(R);

    IndepResult r1 = indep_number(reg, true);
    CHECK(r1.exact);
    CHECK(r1.lower == 1);
    CHECK(r1.upper == 1);

    IndepResult r2 = indep_number(RModule::power(reg, 2), true);
    CHECK(r2.lower == 2);

    RModule simple = RModule::string_module(word(*R, "@v"), R);
    IndepResult r0 = indep_number(simple, true);
    CHECK(r0.lower == 0);
    CHECK(r0.upper == 0);

    // superadditivity on a mixed sum, and the witness is always certified
    RModule M = RModule::direct_sum(reg, RModule::string_module(word(*R, "x y^-1"), R));
    IndepResult rm = indep_number(M, true);
    CHECK(rm.lower >= 1);
    CHECK(rm.lower <= rm.upper);

    // randomized mode respects the trivial upper bound
    IndepResult rr = indep_number(RModule::power(reg, 3), false, 5000, 3);
    CHECK(rr.lower <= rr.upper);
    CHECK(rr.lower >= 1);

    // superadditivity under direct sums, on exactly-solved instances
    RModule A = RModule::direct_sum(reg, simple);
    RModule B = RModule::string_module(word(*R, "x"), R);
    IndepResult ra = indep_number(A, true);
    IndepResult rb = indep_number(B, true);
    IndepResult rab = indep_number(RModule::direct_sum(A, B), true);
    CHECK(rab.lower >= ra.lower + rb.lower);
}

TEST_CASE("weights and hom parameters") {
    Algebra R = gp_algebra();
    RModule Q = RModule::string_module(word(*R, "x"), R);
    std::string qlabel = component_label(Q.components().front(), *R);

    CHECK(weight_of(RModule::power(Q, 3), qlabel) == 1);

    RModule P = RModule::string_module(word(*R, "y"), R);
    RModule M = RModule::direct_sum(Q, P);
    CHECK(weight_of(M, qlabel) == Rat(1, 2));

    RModule simple = RModule::string_module(word(*R, "@v"), R);
    CHECK(hom_param_L(simple, simple) == 1);
    CHECK(hom_param_L(Q, Q) == 1); // hom dim 2 over module dim 2

    // numerators add over direct sums
    Rat lm = hom_param_L(Q, M) * M.dim();
    Rat lq = hom_param_L(Q, Q) * Q.dim();
    Rat lp = hom_param_L(Q, P) * P.dim();
    CHECK(lm == lq + lp);

    RModule raw = RModule::raw(R, {0}, {Matrix(R->field(), 1, 1), Matrix(R->field(), 1, 1)});
    CHECK_THROWS_WITH_AS(weight_of(raw, qlabel), doctest::Contains("UnknownDecomposition"),
                         Error);
}

TEST_CASE("stability probes") {
    Algebra R = gp_algebra();
    RModule Q = RModule::string_module(word(*R, "x"), R);
    RModule M = RModule::power(Q, 6);

    // matrix parameters obey the trim bound
    ParameterId pa;
    pa.kind = ParameterId::Kind::RankA;
    pa.A = rmatrix_parse("[[x]]", R);
    StabilityReport rep = stability_probe(pa, M, Rat(1, 6), 10, 77);
    for (const auto& [eps, dev] : rep.trims) CHECK(dev <= 2 * eps); // l = 1

    // weight is constant along powers
    ParameterId pw;
    pw.kind = ParameterId::Kind::Weight;
    pw.q = Q;
    pw.q_label = component_label(Q.components().front(), *R);
    StabilityReport wrep = stability_probe(pw, Q, Rat(1, 4), 0, 1);
    for (const Rat& v : wrep.power_trajectory) CHECK(v == 1);

    // g is constant along powers of a fixed module
    ParameterId pg;
    pg.kind = ParameterId::Kind::G;
    StabilityReport grep = stability_probe(pg, Q, Rat(1, 4), 5, 78);
    for (size_t i = 1; i < grep.power_trajectory.size(); ++i)
        CHECK(grep.power_trajectory[i] == grep.power_trajectory[0]);
}

TEST_CASE("largest submodule inside a subspace") {
    Algebra R = gp_algebra();
    RModule M = RModule::string_module(word(*R, "x y^-1 x"), R);
    // the full space is a submodule
    CHECK(largest_submodule_inside(M, Matrix::identity(R->field(), 4)).cols() == 4);
    // a coordinate subspace missing z_0 cannot contain z_1 (x z_1 = z_0)
    Matrix U(R->field(), 4, 3);
    U.at(1, 0) = U.at(2, 1) = U.at(3, 2) = 1;
    Matrix N = largest_submodule_inside(M, U);
    RModule sub = restrict_to_submodule(M, N);
    CHECK(module_check(sub, *R).ok);
    for (size_t c = 0; c < N.cols(); ++c) CHECK(N.at(0, c) == 0);
}

TEST_CASE("tester end to end") {
    Algebra R = gp_algebra();
    ParameterId pg;
    pg.kind = ParameterId::Kind::G;
    TesterConfig cfg;
    cfg.kappa = Rat(1, 16);
    cfg.max_string_len = 3;
    cfg.band_dim_cap = 5;
    Tester T = build_tester(pg, R, cfg);
    REQUIRE(!T.catalog.tiles.empty());
    CHECK(T.delta == T.kappa / 2);
    CHECK(T.p_values.size() == T.catalog.tiles.size());

    // a pure tile power is recovered exactly
    for (size_t j = 0; j < T.catalog.tiles.size(); ++j) {
        RModule M = RModule::power(T.catalog.tiles[j].mod, 3);
        std::vector<Rat> est;
        for (const RMatrix& A : T.suite.mats) est.push_back(rk(M, A));
        TestOutcome out = run_tester(T, est);
        CHECK(out.ok);
        CHECK(out.radius == 0);
        CHECK(out.value == T.p_values[static_cast<size_t>(out.tile)]);
        CHECK(rat_abs(out.value - eval_parameter(pg, M)) <= Rat(1, 8));
    }

    // an adversarial mixture far from every tile is flagged
    RModule far = RModule::direct_sum(
        RModule::power(RModule::string_module(word(*R, "@v"), R), 5),
        RModule::power(RModule::string_module(word(*R, "x"), R), 5));
    std::vector<Rat> est;
    for (const RMatrix& A : T.suite.mats) est.push_back(rk(far, A));
    TestOutcome out = run_tester(T, est);
    CHECK_FALSE(out.ok);
    CHECK(out.flag == "NoTileWithinKappa");
}
