#include "stralg/pp.hpp"

namespace stralg {

PPFormula pp_free(Algebra R, size_t t) {
    PPFormula phi;
    phi.A = RMatrix(R, 1, t); // zero row: no constraint
    phi.t = t;
    return phi;
}

PPFormula pp_zero(Algebra R, size_t t) {
    PPFormula phi;
    phi.A = RMatrix(R, t, t);
    for (size_t i = 0; i < t; ++i) phi.A.at(i, i) = R->unit();
    phi.t = t;
    return phi;
}

Matrix pp_subspace(const RModule& M, const PPFormula& phi) {
    if (!M.algebra()->same(*phi.A.R)) fail("AlgebraMismatch", "formula over a different algebra");
    if (phi.t < 1 || phi.t > phi.A.cols) fail("AlgebraMismatch", "formula type out of range");
    size_t d = static_cast<size_t>(M.dim());
    Matrix ker = blow_up(M, phi.A).kernel_basis();       // solutions (v, y) in M^n
    Matrix proj = ker.row_slice(0, phi.t * d);           // the v part
    return proj.col_space_basis();
}

PairDims pp_pair_dims(const RModule& M, const PPPair& pair) {
    if (pair.phi.t != pair.psi.t) fail("AlgebraMismatch", "pair formulas of different type");
    Matrix sub_phi = pp_subspace(M, pair.phi);
    Matrix sub_psi = pp_subspace(M, pair.psi);
    if (!subspace_contains(sub_phi, sub_psi))
        fail("NotIsolating", "M(psi) is not contained in M(phi) on this module");
    PairDims d;
    d.phi = pp_dim(M, pair.phi);
    d.psi = pp_dim(M, pair.psi);
    return d;
}

Rat pp_dim(const RModule& M, const PPFormula& phi) {
    size_t direct = pp_subspace(M, phi).cols();
    Rat via_kernel(static_cast<long>(direct), M.dim());

    // the rank route of the dimension formula
    RMatrix B = rmatrix_zero_cols(phi.A, phi.t);
    Rat via_ranks = Rat(static_cast<long>(phi.t)) + rk(M, B) - rk(M, phi.A);

    if (via_kernel != via_ranks)
        fail("MethodDisagreement", "pp dimension: kernel route " + rat_str(via_kernel) +
                                       " != rank route " + rat_str(via_ranks));
    return via_kernel;
}

AuditReport dimension_function_audit(const RModule& M, const std::vector<PPFormula>& formulas,
                                     long trials, uint64_t seed) {
    AuditReport rep;
    if (formulas.empty()) return rep;
    size_t t = formulas.front().t;
    for (const PPFormula& f : formulas)
        if (f.t != t) fail("AlgebraMismatch", "formulas of mixed type");
    Algebra R = M.algebra();
    size_t d = static_cast<size_t>(M.dim());

    if (pp_dim(M, pp_zero(R, t)) != 0) {
        rep.ok = false;
        rep.violations.push_back("D(bottom) != 0");
    }
    if (pp_dim(M, pp_free(R, t)) != Rat(static_cast<long>(t))) {
        rep.ok = false;
        rep.violations.push_back("D(top) != t");
    }

    std::vector<Matrix> subs;
    subs.reserve(formulas.size());
    for (const PPFormula& f : formulas) subs.push_back(pp_subspace(M, f));

    Rng rng(seed);
    for (long i = 0; i < trials; ++i) {
        const Matrix& U = subs[rng.below(subs.size())];
        const Matrix& V = subs[rng.below(subs.size())];
        Matrix S = subspace_sum(U, V);
        Matrix I = subspace_intersect(U, V);
        ++rep.trials;
        if (S.cols() + I.cols() != U.cols() + V.cols()) {
            rep.ok = false;
            rep.violations.push_back("modular law failed at trial " + std::to_string(i));
        }
        if (subspace_contains(U, V) && V.cols() > U.cols()) {
            rep.ok = false;
            rep.violations.push_back("monotonicity failed at trial " + std::to_string(i));
        }
    }
    (void)d;
    return rep;
}

Rat weight_from_isolating_pair(const RModule& M, const RModule& Q, const PPPair& pair,
                               const std::vector<RModule>* other_components) {
    Rat dq = pp_pair_dims(Q, pair).gap();
    if (dq == 0) fail("NotIsolating", "the pair does not separate Q");
    if (other_components) {
        for (const RModule& P : *other_components) {
            if (pp_pair_dims(P, pair).gap() != 0)
                fail("NotIsolating", "the pair separates another component");
        }
    }
    return pp_pair_dims(M, pair).gap() / dq;
}

PPPair string_counting_pair(const StringWord& S, Algebra R) {
    require_string(S, *R);
    size_t k = S.length();
    if (k < 1) fail("InvalidString", "the counting pair needs a string of positive length");

    // columns: n_k first (the type variable), then n_0 .. n_{k-1}
    auto col = [&](size_t i) { return i == k ? size_t(0) : i + 1; };
    AlgebraElement minus_one = elem_scale(R->unit(), R->field()->neg(1), *R);

    RMatrix A(R, k, k + 1);
    for (size_t i = 1; i <= k; ++i) {
        const Letter& ci = S.letters[i - 1];
        Path p;
        p.arrows.push_back(ci.arrow);
        AlgebraElement arrow_elem = R->elem_of_path(R->basis_index(p));
        if (!ci.inv) {
            // C_i n_i - n_{i-1} = 0
            A.at(i - 1, col(i)) = arrow_elem;
            A.at(i - 1, col(i - 1)) = minus_one;
        } else {
            // C_i n_{i-1} - n_i = 0 (the underlying arrow applied to n_{i-1})
            A.at(i - 1, col(i - 1)) = arrow_elem;
            A.at(i - 1, col(i)) = minus_one;
        }
    }

    PPPair pair;
    pair.phi.A = A;
    pair.phi.t = 1;
    RMatrix B(R, k + 1, k + 1);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j <= k; ++j) B.at(i, j) = A.at(i, j);
    B.at(k, col(0)) = R->unit(); // E_0: n_0 = 0
    pair.psi.A = B;
    pair.psi.t = 1;
    return pair;
}

} // namespace stralg
