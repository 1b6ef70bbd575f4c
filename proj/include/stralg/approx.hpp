#pragma once

#include <optional>

#include "stralg/strgraph.hpp"
#include "stralg/tiling.hpp"

namespace stralg {

// Finite list of pairwise non-isomorphic small modules: every string of
// length < max_string_len (up to inversion) and every band of dimension
// < band_dim_cap (word up to rotation/inversion, all fitting (f, power)).
struct TileCatalog {
    Algebra R;
    struct Tile {
        std::string label;
        Component comp;
        RModule mod;
    };
    std::vector<Tile> tiles; // sorted by (dim, label)
    int max_string_len = 0;
    int band_dim_cap = 0;

    int index_of(const std::string& label) const;
};

TileCatalog build_tile_catalog(Algebra R, int max_string_len, int band_dim_cap,
                               size_t explosion_limit = 10000);

// enumeration helpers shared with the catalog
std::vector<StringWord> enumerate_strings(const StringAlgebra& R, int max_len);
std::vector<BandData> enumerate_bands(const StringAlgebra& R, int dim_cap);

// Does A^k embed as a direct summand of M covering >= (1-eps) of dim M?
// Decided by multiset matching of canonical component labels.
struct EpsTilesResult {
    bool ok = false;
    long k = 0;
    Rat covered;
};
EpsTilesResult epsilon_tiles(const RModule& A, const RModule& M, const Rat& eps);

// A matched pair of path segments: vertices [lo, hi] of a component on each
// side, decoding to the same word up to inversion.
struct SegmentRef {
    size_t component = 0;
    size_t lo = 0, hi = 0; // vertex interval, inclusive

    size_t vertices() const { return hi - lo + 1; }
};

struct IsoCertificate {
    std::vector<std::pair<SegmentRef, SegmentRef>> matches;
    Rat eps_left, eps_right; // achieved uncovered fractions
};

// Three phases: exact component matching, block matching of the remainder
// cut at the hyperfiniteness scale, coverage accounting.  A certificate is
// produced iff the uncovered fraction is <= eps on both sides.
struct EpsIsoOutcome {
    std::optional<IsoCertificate> certificate;
    std::string account; // which budget failed, when no certificate
};
EpsIsoOutcome epsilon_isomorphism(const StringGraph& G1, const StringGraph& G2, const Rat& eps);

// module-level wrapper; UnsupportedRawModule unless both are string sums
EpsIsoOutcome epsilon_isomorphism_modules(const RModule& M, const RModule& N, const Rat& eps);
StringGraph graph_of_module(const RModule& M); // UnsupportedRawModule on bands/raw

// Independent re-verification: segments decode to equal canonical words,
// segments are disjoint per component, uncovered fractions within eps.
bool verify_certificate(const StringGraph& G1, const StringGraph& G2, const IsoCertificate& cert,
                        const Rat& eps, std::string* why = nullptr);

// Unrolls a band by deleting the V-slice between the twist transitions,
// producing the string sum M(C_3...C_n)^{dim V} of dimension (1 - 1/n) dim B.
// TooSmall when dim B < T_threshold or the slice loss exceeds kappa.
struct BandApprox {
    std::vector<StringWord> words; // with multiplicity
    RModule module;
    Rat deficit; // (dim B - dim L) / dim B
    IsoCertificate cert;
    StringGraph graph;
};
BandApprox band_to_string_approx(const BandData& B, Algebra R, const Rat& kappa,
                                 long T_threshold);

// M = M1 (bands of dimension < T) + M2 (strings and big bands).
std::pair<std::vector<Component>, std::vector<Component>>
split_band_string(const std::vector<Component>& components, const StringAlgebra& R, long T);

} // namespace stralg
