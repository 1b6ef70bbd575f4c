#include <doctest.h>

#include "fixtures.hpp"
#include "stralg/gen.hpp"
#include "stralg/strgraph.hpp"

using namespace stralg;
using namespace stralg::fixtures;

TEST_CASE("graphs of words") {
    Algebra R = gp_algebra();

    StringGraph triv = StringGraph::of_words({word(*R, "@v")}, R);
    CHECK(triv.vertex_count() == 1);

    StringWord S = word(*R, "x y^-1");
    StringGraph a = StringGraph::of_words({S}, R);
    StringGraph b = StringGraph::of_words({S.inverse()}, R);
    CHECK(a.components == b.components);

    StringGraph two = StringGraph::of_words({S, word(*R, "x")}, R);
    CHECK(two.components.size() == 2);
    CHECK(two.components[0].length() <= two.components[1].length());

    // canonicalization is idempotent
    StringGraph again = StringGraph::of_words(two.components, R);
    CHECK(again.components == two.components);
}

TEST_CASE("graph to module round trip") {
    Algebra R = gp_algebra();
    Rng rng(4);
    for (int t = 0; t < 50; ++t) {
        std::vector<StringWord> words;
        long parts = rng.range(1, 4);
        for (long i = 0; i < parts; ++i) words.push_back(random_string_word(*R, rng, rng.below(6)));
        StringGraph G = StringGraph::of_words(words, R);
        RModule M = G.to_module();
        CHECK(static_cast<size_t>(M.dim()) == G.vertex_count());
        std::vector<StringWord> decoded;
        for (const Component& c : M.components()) decoded.push_back(*c.word());
        CHECK(StringGraph::of_words(decoded, R).components == G.components);
    }
}

TEST_CASE("exact ball statistics") {
    Algebra R = gp_algebra();

    // isolated vertices: one type with frequency 1
    StringGraph pts = StringGraph::of_words({word(*R, "@v"), word(*R, "@v"), word(*R, "@v")}, R);
    for (int r : {1, 2, 3}) {
        StatProfile p = ball_stats(pts, r);
        CHECK(p.freq.size() == 1);
        CHECK(p.freq.begin()->second == 1);
    }

    // a single edge at radius 1: left end and right end, 1/2 each
    StringGraph edge = StringGraph::of_words({word(*R, "x")}, R);
    StatProfile p1 = ball_stats(edge, 1);
    CHECK(p1.freq.size() == 2);
    for (const auto& [k, f] : p1.freq) CHECK(f == Rat(1, 2));

    // frequencies always sum to 1
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        RModule M = random_string_sum(R, rng, 30);
        StringGraph G = StringGraph::of_words(
            [&] {
                std::vector<StringWord> ws;
                for (const Component& c : M.components()) ws.push_back(*c.word());
                return ws;
            }(),
            R);
        StatProfile p = ball_stats(G, 2);
        Rat total = 0;
        for (const auto& [k, f] : p.freq) total += f;
        CHECK(total == 1);
    }

    CHECK_THROWS_WITH_AS(ball_stats(StringGraph{R, {}}, 1), doctest::Contains("EmptyGraph"),
                         Error);
}

TEST_CASE("ball statistics coarsen consistently") {
    Algebra R = kronecker_algebra();
    Rng rng(10);
    for (int t = 0; t < 20; ++t) {
        std::vector<StringWord> words;
        for (long i = 0, parts = rng.range(1, 4); i < parts; ++i)
            words.push_back(random_string_word(*R, rng, rng.below(9)));
        StringGraph G = StringGraph::of_words(words, R);
        int r = 3;
        StatProfile fine = ball_stats(G, r);
        StatProfile coarse = ball_stats(G, r - 1);

        std::map<BallType, Rat> derived;
        for (const auto& [type, f] : fine.freq) {
            BallType cut;
            cut.left = std::min(type.left, r - 1);
            cut.right = std::min(type.right, r - 1);
            size_t lo = static_cast<size_t>(type.left - cut.left);
            cut.letters.assign(type.letters.begin() + static_cast<long>(lo),
                               type.letters.begin() +
                                   static_cast<long>(lo + static_cast<size_t>(cut.left + cut.right)));
            BallType canon = cut.canonical();
            derived[canon] += f;
        }
        CHECK(derived == coarse.freq);
    }
}

TEST_CASE("sampled statistics") {
    Algebra R = gp_algebra();
    StringGraph pts = StringGraph::of_words({word(*R, "@v"), word(*R, "@v")}, R);
    SampledStats s = ball_stats_sampled(pts, 2, 50, 99);
    CHECK(s.profile.freq.size() == 1);
    CHECK(s.profile.freq.begin()->second == 1); // single type regardless of seed

    // determinism given the seed
    StringGraph mixed = StringGraph::of_words({word(*R, "x y^-1 x"), word(*R, "y")}, R);
    SampledStats a = ball_stats_sampled(mixed, 1, 4, 7);
    SampledStats b = ball_stats_sampled(mixed, 1, 4, 7);
    CHECK(a.profile.freq == b.profile.freq);

    // a budget covering the graph is exhaustive and equals the census
    SampledStats full = ball_stats_sampled(mixed, 1, 40, 11);
    CHECK(full.profile.freq == ball_stats(mixed, 1).freq);

    CHECK(hoeffding_epsilon(0.05, 100) == doctest::Approx(0.1358102).epsilon(1e-5));
}

TEST_CASE("census is identical across worker counts") {
    Algebra R = gp_algebra();
    Rng rng(13);
    std::vector<StringWord> words;
    for (int i = 0; i < 12; ++i) words.push_back(random_string_word(*R, rng, rng.below(20)));
    StringGraph G = StringGraph::of_words(words, R);
    StatProfile one = ball_stats(G, 2, 1);
    for (int jobs : {2, 3, 8}) {
        StatProfile many = ball_stats(G, 2, jobs);
        CHECK(many.freq == one.freq);
    }
}

TEST_CASE("right endpoint counts") {
    Algebra R = gp_algebra();
    StringWord S = word(*R, "x y^-1");
    StringGraph GS = StringGraph::of_words({S}, R);
    EndpointCount ec = right_endpoint_count(S, GS);
    CHECK(ec.count == 1);
    CHECK(ec.density == Rat(1, 3));

    StringWord longer = word(*R, "x y^-1 x y^-1");
    CHECK(right_endpoint_count(longer, GS).count == 0);

    StringGraph GS2 = StringGraph::of_words({S, S}, R);
    CHECK(right_endpoint_count(S, GS2).count == 2);

    CHECK_THROWS_WITH_AS(right_endpoint_count(word(*R, "@v"), GS),
                         doctest::Contains("InvalidString"), Error);
}

TEST_CASE("profile distance and duplication invariance") {
    Algebra R = gp_algebra();
    StringWord S = word(*R, "x y^-1 x");
    StringGraph G = StringGraph::of_words({S}, R);
    StringGraph GG = StringGraph::of_words({S, S}, R);

    for (int r : {1, 2, 3}) {
        StatProfile p = ball_stats(G, r), q = ball_stats(GG, r);
        CHECK(profile_distance_bs(p, q) == 0);
    }
    CHECK_THROWS_WITH_AS(profile_distance_bs(ball_stats(G, 1), ball_stats(G, 2)),
                         doctest::Contains("RadiusMismatch"), Error);
}

TEST_CASE("stringconvergence report") {
    Algebra R = gp_algebra();
    StringWord S = word(*R, "x y^-1");
    StringWord T = word(*R, "y");

    // alternating sequence of two distinct graphs is not Cauchy
    std::vector<StringGraph> graphs;
    for (int i = 0; i < 4; ++i)
        graphs.push_back(StringGraph::of_words({i % 2 ? S : T}, R));
    ConvergenceReport rep = stringconvergence_check(graphs, {S, T}, 2);
    CHECK(rep.cauchy_modulus.front() > 0);
    CHECK(rep.cauchy_modulus.back() == 0); // tail of one element

    // a constant sequence is Cauchy at modulus zero
    std::vector<StringGraph> constant(3, StringGraph::of_words({S}, R));
    ConvergenceReport c = stringconvergence_check(constant, {S}, 2);
    for (const Rat& m : c.cauchy_modulus) CHECK(m == 0);
    CHECK(c.r_trajectories[0][0] == Rat(1, 3));
}
