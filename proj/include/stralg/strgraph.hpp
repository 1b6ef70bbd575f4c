#pragma once

#include <map>

#include "stralg/rational.hpp"
#include "stralg/rmodule.hpp"
#include "stralg/rng.hpp"

namespace stralg {

// Disjoint union of colored directed paths, one per string word.  Edge i of
// a component runs between x_{i-1} and x_i and encodes letter C_i: directed
// from x_{i-1} to x_i with color a for a direct letter a, the other way for
// an inverse letter.  Components are stored canonically (each word replaced
// by min(word, inverse), components sorted), so graph isomorphism is plain
// equality.
struct StringGraph {
    Algebra R;
    std::vector<StringWord> components;

    static StringGraph of_words(std::vector<StringWord> words, Algebra R);
    size_t vertex_count() const;
    RModule to_module() const;
};

// Rooted r-ball in a path graph: the word segment around the root, with the
// root offset; canonical under the reflection onto the inverse segment.
struct BallType {
    int left = 0, right = 0;          // extents, <= r; smaller only at path ends
    std::vector<Letter> letters;      // the segment, length left + right

    BallType canonical() const;
    bool operator<(const BallType& o) const {
        if (left != o.left) return left < o.left;
        if (right != o.right) return right < o.right;
        return letters < o.letters;
    }
    bool operator==(const BallType& o) const {
        return left == o.left && right == o.right && letters == o.letters;
    }
    std::string str(const StringAlgebra& R) const;
};

struct StatProfile {
    int radius = 0;
    BigInt observed = 0; // vertices counted (|V| for the census, samples when sampled)
    std::map<BallType, Rat> freq;
};

BallType ball_type_at(const StringWord& word, size_t vertex_index, int radius);

// Exact census of r-ball types over all vertices.
StatProfile ball_stats(const StringGraph& G, int radius, int jobs = 1);

// Uniform i.i.d. vertex samples (pre-assigned by index, deterministic given
// the seed) plus the Hoeffding radius for a requested confidence.
struct SampledStats {
    StatProfile profile;
    long samples = 0;
    double confidence_delta = 0.05;
    double hoeffding_eps = 0.0; // sqrt(ln(2/delta) / (2 samples))
};
SampledStats ball_stats_sampled(const StringGraph& G, int radius, long samples, uint64_t seed,
                                double confidence_delta = 0.05);

double hoeffding_epsilon(double delta, long samples);

// total variation distance between two profiles of equal radius
Rat profile_distance_bs(const StatProfile& p, const StatProfile& q);

// Right endvertices of embedded copies of S in G: the count |R(S,G)| and the
// density r(S,G) = |R(S,G)| / |V(G)|.
struct EndpointCount {
    long count = 0;
    Rat density;
};
EndpointCount right_endpoint_count(const StringWord& S, const StringGraph& G);

// r(S, G_n) and p(H, G_n) trajectories with their Cauchy moduli.
struct ConvergenceReport {
    std::vector<std::string> word_names;
    std::vector<std::vector<Rat>> r_trajectories;   // [word][step]
    std::vector<Rat> bs_steps;                      // TV distance of consecutive profiles
    std::vector<Rat> cauchy_modulus;                // sup over m,n >= j of profile TV distance
};
ConvergenceReport stringconvergence_check(const std::vector<StringGraph>& graphs,
                                          const std::vector<StringWord>& words, int radius);

} // namespace stralg
