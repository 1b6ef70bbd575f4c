#include <doctest.h>

#include "fixtures.hpp"
#include "stralg/approx.hpp"
#include "stralg/gen.hpp"

using namespace stralg;
using namespace stralg::fixtures;

TEST_CASE("string enumeration up to inversion") {
    Algebra R = gp_algebra();
    auto words = enumerate_strings(*R, 3);
    // trivial, x, y, and the two inversion classes of length 2
    CHECK(words.size() == 5);
    for (const StringWord& w : words) {
        CHECK(check_string(w, *R).ok);
        CHECK(canonical_word(w) == w);
    }
    // enumeration is deterministic
    CHECK(enumerate_strings(*R, 3) == words);
}

TEST_CASE("band enumeration") {
    Algebra K = kronecker_algebra();
    auto bands = enumerate_bands(*K, 5);
    // word a b^-1 with f = x+1 (n = 1, 2) and the two irreducible quadratics
    // over GF(2) have dims 2, 4, 4; x^2+x+1 is the only irreducible quadratic
    REQUIRE(!bands.empty());
    for (const BandData& b : bands) {
        CHECK(b.word.length() * static_cast<size_t>(b.power) *
                  static_cast<size_t>(b.f.degree()) <
              5);
        CHECK(canonical_band_rotation(b.word) == b.word);
        CHECK_NOTHROW(RModule::band_module(b, K));
    }
    std::vector<int> dims;
    for (const BandData& b : bands) dims.push_back(static_cast<int>(b.word.length()) * b.power * b.f.degree());
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<int>{2, 4, 4});
}

TEST_CASE("tile catalog") {
    Algebra R = gp_algebra();
    TileCatalog cat = build_tile_catalog(R, 3, 5);
    CHECK(cat.tiles.size() >= 6); // 5 strings + at least one band
    // no duplicate labels, tiles sorted by dimension
    for (size_t i = 0; i + 1 < cat.tiles.size(); ++i) {
        CHECK(cat.tiles[i].label != cat.tiles[i + 1].label);
        CHECK(cat.tiles[i].mod.dim() <= cat.tiles[i + 1].mod.dim());
    }
    // trivial words survive tiny caps
    TileCatalog tiny = build_tile_catalog(R, 1, 2);
    bool has_trivial = false;
    for (const auto& t : tiny.tiles) has_trivial |= t.label == "s:@v";
    CHECK(has_trivial);

    CHECK_THROWS_WITH_AS(build_tile_catalog(R, 6, 6, 3), doctest::Contains("ExplosionGuard"),
                         Error);
}

TEST_CASE("epsilon tiles") {
    Algebra R = gp_algebra();
    RModule Mx = RModule::string_module(word(*R, "x"), R);
    RModule M = RModule::power(Mx, 5);

    EpsTilesResult self = epsilon_tiles(M, M, Rat(1, 10));
    CHECK(self.ok);
    CHECK(self.k == 1);

    RModule T = RModule::string_module(word(*R, "@v"), R);
    RModule MT = RModule::direct_sum(M, T); // dim 11, T is 1/11
    EpsTilesResult r = epsilon_tiles(Mx, MT, Rat(1, 10));
    CHECK(r.ok);
    CHECK(r.k == 5);
    CHECK(r.covered == Rat(10, 11));

    // component absent and over budget
    RModule My = RModule::string_module(word(*R, "y"), R);
    EpsTilesResult none = epsilon_tiles(My, M, Rat(1, 10));
    CHECK_FALSE(none.ok);
}

TEST_CASE("epsilon isomorphism basics") {
    Algebra R = gp_algebra();
    Rng rng(12);
    RModule M = random_string_sum(R, rng, 40);
    StringGraph GM = graph_of_module(M);

    // identical modules: certificate at zero
    EpsIsoOutcome same = epsilon_isomorphism_modules(M, M, Rat(1, 100));
    REQUIRE(same.certificate.has_value());
    CHECK(same.certificate->eps_left == 0);
    CHECK(same.certificate->eps_right == 0);
    CHECK(verify_certificate(GM, GM, *same.certificate, Rat(1, 100)));

    // dropping a relatively small component still certifies
    RModule small = RModule::string_module(word(*R, "@v"), R);
    RModule Mbig = RModule::direct_sum(M, small);
    Rat eps(1, M.dim()); // exactly the dropped fraction
    EpsIsoOutcome drop = epsilon_isomorphism_modules(Mbig, M, Rat(2, M.dim()));
    CHECK(drop.certificate.has_value());

    // disjoint letters never certify below eps = 1
    RModule X = RModule::power(RModule::string_module(word(*R, "x"), R), 4);
    RModule Y = RModule::power(RModule::string_module(word(*R, "y"), R), 4);
    EpsIsoOutcome no = epsilon_isomorphism_modules(X, Y, Rat(9, 10));
    CHECK_FALSE(no.certificate.has_value());
    CHECK(!no.account.empty());
}

TEST_CASE("block phase matches perturbed long strings") {
    Algebra R = gp_algebra();
    // two long alternating strings of slightly different lengths share
    // almost all of their blocks
    Rng rng(5);
    StringWord a = random_string_word(*R, rng, 120);
    StringWord b = a;
    b.letters.pop_back();
    b.letters.pop_back();
    RModule MA = RModule::string_module(a, R);
    RModule MB = RModule::string_module(b, R);
    EpsIsoOutcome out = epsilon_isomorphism_modules(MA, MB, Rat(1, 4));
    REQUIRE(out.certificate.has_value());
    CHECK(verify_certificate(graph_of_module(MA), graph_of_module(MB), *out.certificate,
                             Rat(1, 4)));
}

TEST_CASE("certificate verifier rejects tampering") {
    Algebra R = gp_algebra();
    RModule M = RModule::power(RModule::string_module(word(*R, "x y^-1"), R), 2);
    StringGraph G = graph_of_module(M);
    EpsIsoOutcome out = epsilon_isomorphism_modules(M, M, Rat(1, 10));
    REQUIRE(out.certificate.has_value());

    IsoCertificate bad = *out.certificate;
    bad.matches.push_back(bad.matches.front()); // overlapping reuse
    std::string why;
    CHECK_FALSE(verify_certificate(G, G, bad, Rat(1, 10), &why));
    CHECK(!why.empty());

    IsoCertificate off = *out.certificate;
    off.matches.front().second.component = 99;
    CHECK_FALSE(verify_certificate(G, G, off, Rat(1, 10)));
}

TEST_CASE("band to string approximation") {
    Algebra D = deep_loop_algebra();
    StringWord cyc = word(*D, "x x y^-1 x y^-1 x y^-1");
    BandData B{cyc, Poly({1, 1}), 2};
    RModule MB = RModule::band_module(B, D);
    REQUIRE(MB.dim() == 14);

    BandApprox ap = band_to_string_approx(B, D, Rat(1, 4), 4);
    CHECK(ap.deficit == Rat(2, 14)); // dim V / dim B = 1/n
    CHECK(ap.module.dim() == 12);
    CHECK(ap.words.size() == 2); // one copy per V-coordinate
    CHECK(ap.words.front().length() == cyc.length() - 2);
    CHECK(verify_certificate(ap.graph, ap.graph, ap.cert, Rat(1, 4)));

    CHECK_THROWS_WITH_AS(band_to_string_approx(B, D, Rat(1, 4), 100),
                         doctest::Contains("TooSmall"), Error);
    CHECK_THROWS_WITH_AS(band_to_string_approx(B, D, Rat(1, 100), 4),
                         doctest::Contains("TooSmall"), Error);
}

TEST_CASE("band/string split") {
    Algebra K = kronecker_algebra();
    RModule s = RModule::string_module(word(*K, "a"), K);
    BandData b1{word(*K, "a b^-1"), Poly({1, 1}), 1}; // dim 2
    BandData b2{word(*K, "a b^-1"), Poly({1, 1}), 2}; // dim 4
    RModule M = RModule::direct_sum(
        RModule::direct_sum(s, RModule::band_module(b1, K)), RModule::band_module(b2, K));

    auto [small, rest] = split_band_string(M.components(), *K, 4);
    REQUIRE(small.size() == 1); // only the dim-2 band is strictly below 4
    CHECK(small.front().is_band());
    CHECK(component_dim(small.front(), *K) == 2);
    CHECK(rest.size() == 2); // the string and the boundary band (dim == T)
}
