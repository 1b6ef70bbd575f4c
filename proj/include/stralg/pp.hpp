#pragma once

#include "stralg/rank.hpp"

namespace stralg {

// Existentially quantified linear condition of type t: v in M^t satisfies
// phi when some y in M^{n-t} solves A (v, y)^T = 0 rowwise.
struct PPFormula {
    RMatrix A; // m x n
    size_t t = 1;
};

PPFormula pp_free(Algebra R, size_t t = 1);   // no constraint, M(phi) = M^t
PPFormula pp_zero(Algebra R, size_t t = 1);   // v = 0 forced

struct PPPair {
    PPFormula phi;
    PPFormula psi; // same type; containment M(psi) <= M(phi) checked per module
};

// Canonical basis of M(phi) inside M^t (ambient t * dim M).
Matrix pp_subspace(const RModule& M, const PPFormula& phi);

// Evaluates both sides of a pair and verifies the containment
// M(psi) <= M(phi) on this module (global phi >= psi is never certified).
struct PairDims {
    Rat phi, psi;
    Rat gap() const { return phi - psi; }
};
PairDims pp_pair_dims(const RModule& M, const PPPair& pair);

// D_M(phi), computed both by the direct kernel projection and by the rank
// formula t + rk(B) - rk(A) with B the matrix A with its first t columns
// zeroed; the two must agree exactly.
Rat pp_dim(const RModule& M, const PPFormula& phi);

// Checks D(bottom)=0, D(top)=t, the modular law on random formula pairs and
// monotonicity of nested subspaces; every identity exact.
AuditReport dimension_function_audit(const RModule& M, const std::vector<PPFormula>& formulas,
                                     long trials, uint64_t seed);

// (D_M(phi) - D_M(psi)) / (D_Q(phi) - D_Q(psi)).  When the Krull-Schmidt
// component list of M is supplied, verifies that the pair really isolates Q
// among its components first.
Rat weight_from_isolating_pair(const RModule& M, const RModule& Q, const PPPair& pair,
                               const std::vector<RModule>* other_components = nullptr);

// The pp-pair of the string counting identity: phi_S from equations E_1..E_k
// on variables n_0..n_k, psi_S adding E_0: n_0 = 0; type variable n_k.  For
// every string sum N, dim N(phi_S) - dim N(psi_S) counts the right
// endvertices of embedded copies of S in the string graph of N.
PPPair string_counting_pair(const StringWord& S, Algebra R);

} // namespace stralg
