#pragma once

#include "stralg/rational.hpp"
#include "stralg/rmodule.hpp"

namespace stralg {

// A hyperfinite decomposition: independent subspaces covering all but an
// epsilon of the module, each almost invariant (expansion <= 1 + eps under
// the generating operators) and of bounded dimension.
struct TilePiece {
    Matrix basis; // columns, ambient coordinates
    std::string label;
};

struct Tiling {
    size_t ambient_dim = 0;
    Rat epsilon;
    std::vector<TilePiece> pieces;
    Rat achieved_coverage;
    Rat achieved_expansion; // max over pieces of dim(N + sum T N) / dim N
    long bound_L = 0;       // every piece dim <= bound_L
    long m = 0, m_eps = 0;  // the cut constants actually used (k for Jordan)
};

// block length m = ceil(2/eps) + 2 satisfies (m+2)/m <= 1+eps
long tiling_block_length(const Rat& eps);

// Cuts the basis z_0..z_n of M(S) into consecutive blocks of length m once
// |S| >= m_eps = ceil(m/eps); short strings stay whole.
Tiling tile_string_module(const StringWord& S, Algebra R, const Rat& eps);

// The three regimes of the band cut: long word (coordinate lines cut along
// the word), short word with a large twist space (cut across the V-basis),
// small both (one piece).  m_eps = ceil((m+1)/eps) here.
Tiling tile_band_module(const BandData& B, Algebra R, const Rat& eps);

// K[X]/f^n with X acting as the companion matrix of f^n: blocks of k =
// ceil(1/eps) consecutive t-powers, one piece when deg(f) n <= 2 k^2.
// Returns the tiling together with the X matrix it tiles.
struct JordanTiling {
    Tiling tiling;
    Matrix x_action;
};
JordanTiling tile_jordan(const Poly& f, int n, Field K, const Rat& eps);

// Standalone re-verification of the four tiling invariants over the raw
// bases; independent of how the tiling was produced.
struct TilingCheck {
    bool ok = true;
    std::string detail;
};
TilingCheck verify_tiling(const Tiling& T, const std::vector<Matrix>& operators, const Rat& eps);

std::vector<Matrix> module_operators(const RModule& M); // the arrow actions

// Largest subspace W of span(V) with T(W) inside span(V) for every listed
// operator, via the kernels of the quotient maps V -> (T V + V)/V.  The
// dimension bound dim W >= (1 - sum eps_T) dim V is checked exactly;
// BudgetExceeded when some operator expands more than its budget.
struct InvariantSubspace {
    Matrix basis;
    Rat dim_bound; // the proven lower bound on dim W / dim V
};
InvariantSubspace find_invariant_subspace(const Matrix& V, const std::vector<Matrix>& operators,
                                          const std::vector<Rat>& budgets);

} // namespace stralg
