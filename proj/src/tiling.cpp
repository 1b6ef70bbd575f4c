#include "stralg/tiling.hpp"

#include <algorithm>

namespace stralg {

namespace {

void require_eps(const Rat& eps) {
    if (eps <= 0 || eps >= 1) fail("BadEpsilon", "epsilon must lie in (0,1)");
}

Matrix coordinate_piece(const Field& K, size_t ambient, const std::vector<size_t>& idx) {
    Matrix B(K, ambient, idx.size());
    for (size_t c = 0; c < idx.size(); ++c) B.at(idx[c], c) = 1;
    return B;
}

void finalize(Tiling& T, const std::vector<Matrix>& operators) {
    long covered = 0;
    Rat worst = T.pieces.empty() ? Rat(1) : Rat(0);
    for (const TilePiece& p : T.pieces) {
        covered += static_cast<long>(p.basis.cols());
        Matrix span = p.basis;
        for (const Matrix& op : operators) span = Matrix::hcat(span, op.mul(p.basis));
        Rat expansion(static_cast<long>(span.rank()), static_cast<long>(p.basis.cols()));
        worst = std::max(worst, expansion);
        T.bound_L = std::max(T.bound_L, static_cast<long>(p.basis.cols()));
    }
    T.achieved_coverage = Rat(covered, static_cast<long>(T.ambient_dim));
    T.achieved_expansion = worst;
}

} // namespace

long tiling_block_length(const Rat& eps) { return rat_ceil_long(2 / eps) + 2; }

std::vector<Matrix> module_operators(const RModule& M) {
    std::vector<Matrix> ops;
    for (size_t a = 0; a < M.algebra()->quiver().arrows.size(); ++a)
        ops.push_back(M.action(static_cast<int>(a)));
    return ops;
}

Tiling tile_string_module(const StringWord& S, Algebra R, const Rat& eps) {
    require_eps(eps);
    RModule M = RModule::string_module(S, R);
    long n = static_cast<long>(S.length());
    long m = tiling_block_length(eps);
    long m_eps = rat_ceil_long(Rat(m) / eps);

    Tiling T;
    T.ambient_dim = static_cast<size_t>(M.dim());
    T.epsilon = eps;
    T.m = m;
    T.m_eps = m_eps;
    T.bound_L = std::max(m, m_eps);

    const Field& K = R->field();
    if (n < m_eps) {
        std::vector<size_t> all(static_cast<size_t>(M.dim()));
        for (size_t i = 0; i < all.size(); ++i) all[i] = i;
        T.pieces.push_back({coordinate_piece(K, T.ambient_dim, all), "whole"});
    } else {
        long t = n / m; // tm <= n < (t+1)m
        for (long i = 0; i < t; ++i) {
            std::vector<size_t> idx;
            for (long j = i * m; j < (i + 1) * m; ++j) idx.push_back(static_cast<size_t>(j));
            T.pieces.push_back({coordinate_piece(K, T.ambient_dim, idx),
                                "block" + std::to_string(i)});
        }
    }
    finalize(T, module_operators(M));
    return T;
}

Tiling tile_band_module(const BandData& B, Algebra R, const Rat& eps) {
    require_eps(eps);
    RModule M = RModule::band_module(B, R);
    long n = static_cast<long>(B.word.length());
    long d = B.power * B.f.degree();
    long m = tiling_block_length(eps);
    long m_eps = rat_ceil_long(Rat(m + 1) / eps);

    Tiling T;
    T.ambient_dim = static_cast<size_t>(M.dim());
    T.epsilon = eps;
    T.m = m;
    T.m_eps = m_eps;
    T.bound_L = std::max(m * m_eps, m_eps * m_eps);

    const Field& K = R->field();
    auto slot = [&](long slice, long j) { // slice 1-based, j 0-based
        return static_cast<size_t>((slice - 1) * d + j);
    };

    if (n > m_eps) {
        // coordinate lines along the word, avoiding the twist slices
        long t = (n - 2) / m; // largest t with tm + 2 <= n
        for (long i = 0; i < t; ++i)
            for (long j = 0; j < d; ++j) {
                std::vector<size_t> idx;
                for (long s = i * m + 2; s <= (i + 1) * m + 1; ++s) idx.push_back(slot(s, j));
                T.pieces.push_back({coordinate_piece(K, T.ambient_dim, idx),
                                    "line" + std::to_string(i) + "." + std::to_string(j)});
            }
    } else if (d > m_eps) {
        // cut across the V-basis; every slice, coordinate block [qm, (q+1)m)
        long t = (d - 2) / m;
        for (long q = 0; q < t; ++q) {
            std::vector<size_t> idx;
            for (long s = 1; s <= n; ++s)
                for (long j = q * m; j < (q + 1) * m; ++j) idx.push_back(slot(s, j));
            T.pieces.push_back({coordinate_piece(K, T.ambient_dim, idx),
                                "vblock" + std::to_string(q)});
        }
    } else {
        std::vector<size_t> all(static_cast<size_t>(M.dim()));
        for (size_t i = 0; i < all.size(); ++i) all[i] = i;
        T.pieces.push_back({coordinate_piece(K, T.ambient_dim, all), "whole"});
    }
    finalize(T, module_operators(M));
    return T;
}

JordanTiling tile_jordan(const Poly& f, int n, Field K, const Rat& eps) {
    require_eps(eps);
    if (!poly_is_monic(f) || f.degree() < 1 || !poly_is_irreducible(f, *K))
        fail("ReducibleF", "Jordan tiling needs a monic irreducible polynomial");
    Poly g = poly_pow(f, static_cast<unsigned>(n), *K);
    long D = g.degree();

    Matrix X(K, static_cast<size_t>(D), static_cast<size_t>(D));
    for (long j = 0; j + 1 < D; ++j) X.at(static_cast<size_t>(j + 1), static_cast<size_t>(j)) = 1;
    for (long i = 0; i < D; ++i)
        X.at(static_cast<size_t>(i), static_cast<size_t>(D - 1)) = K->neg(g.coeff(static_cast<size_t>(i)));

    long k = rat_ceil_long(1 / eps);

    JordanTiling out;
    out.x_action = X;
    Tiling& T = out.tiling;
    T.ambient_dim = static_cast<size_t>(D);
    T.epsilon = eps;
    T.m = k;
    T.m_eps = 2 * k * k;
    T.bound_L = 2 * k * k;

    if (D <= 2 * k * k) {
        std::vector<size_t> all(static_cast<size_t>(D));
        for (size_t i = 0; i < all.size(); ++i) all[i] = i;
        T.pieces.push_back({coordinate_piece(K, T.ambient_dim, all), "whole"});
    } else {
        long C = D / k; // largest C with Ck <= D
        for (long i = 1; i <= C; ++i) {
            std::vector<size_t> idx;
            for (long j = (i - 1) * k; j < i * k; ++j) idx.push_back(static_cast<size_t>(j));
            T.pieces.push_back({coordinate_piece(K, T.ambient_dim, idx),
                                "jblock" + std::to_string(i)});
        }
    }
    finalize(T, {X});
    return out;
}

TilingCheck verify_tiling(const Tiling& T, const std::vector<Matrix>& operators, const Rat& eps) {
    TilingCheck rep;
    if (T.pieces.empty()) {
        rep.ok = false;
        rep.detail = "no pieces";
        return rep;
    }
    const Field& K = T.pieces.front().basis.field();

    size_t total = 0;
    Matrix stacked(K, T.ambient_dim, 0);
    for (const TilePiece& p : T.pieces) {
        if (p.basis.rows() != T.ambient_dim) {
            rep.ok = false;
            rep.detail = "piece '" + p.label + "' has wrong ambient dimension";
            return rep;
        }
        if (p.basis.rank() != p.basis.cols()) {
            rep.ok = false;
            rep.detail = "piece '" + p.label + "' basis is dependent";
            return rep;
        }
        if (static_cast<long>(p.basis.cols()) > T.bound_L) {
            rep.ok = false;
            rep.detail = "piece '" + p.label + "' exceeds the bound L";
            return rep;
        }
        total += p.basis.cols();
        stacked = Matrix::hcat(stacked, p.basis);
    }
    if (stacked.rank() != total) {
        rep.ok = false;
        rep.detail = "pieces are not independent";
        return rep;
    }
    if (Rat(static_cast<long>(total), static_cast<long>(T.ambient_dim)) < 1 - eps) {
        rep.ok = false;
        rep.detail = "coverage below 1 - eps";
        return rep;
    }
    for (const TilePiece& p : T.pieces) {
        Matrix span = p.basis;
        for (const Matrix& op : operators) span = Matrix::hcat(span, op.mul(p.basis));
        Rat expansion(static_cast<long>(span.rank()), static_cast<long>(p.basis.cols()));
        if (expansion > 1 + eps) {
            rep.ok = false;
            rep.detail = "piece '" + p.label + "' expands by " + rat_str(expansion);
            return rep;
        }
    }
    return rep;
}

InvariantSubspace find_invariant_subspace(const Matrix& V, const std::vector<Matrix>& operators,
                                          const std::vector<Rat>& budgets) {
    if (operators.size() != budgets.size())
        fail("BudgetExceeded", "one budget per operator required");
    const Field& K = V.field();
    Matrix C = V.col_space_basis();
    long v = static_cast<long>(C.cols());
    if (v == 0) return {C, Rat(1)};

    // residual map: reduce T * C against a row-echelon basis of span(C)
    Matrix rows = C.transpose().echelon(true, nullptr);

    Rat spent = 0;
    Matrix coeff_space = Matrix::identity(K, static_cast<size_t>(v));
    for (size_t oi = 0; oi < operators.size(); ++oi) {
        Matrix TC = operators[oi].mul(C);
        Rat actual = Rat(static_cast<long>(Matrix::hcat(C, TC).rank()), v) - 1;
        if (actual > budgets[oi])
            fail("BudgetExceeded", "operator " + std::to_string(oi) + " expands by " +
                                       rat_str(1 + actual) + ", over its budget");
        spent += actual;

        // residual of each column of TC after eliminating against span(C)
        Matrix M_T = TC;
        for (size_t r = 0; r < rows.rows(); ++r) {
            // find the pivot of this basis row
            size_t pc = 0;
            while (pc < rows.cols() && rows.at(r, pc) == 0) ++pc;
            if (pc == rows.cols()) continue;
            for (size_t col = 0; col < M_T.cols(); ++col) {
                Felt f = M_T.at(pc, col);
                if (!f) continue;
                for (size_t j = 0; j < M_T.rows(); ++j)
                    M_T.at(j, col) = K->sub(M_T.at(j, col), K->mul(f, rows.at(r, j)));
            }
        }
        // kernel of (coefficients -> residual) in the current coefficient space
        Matrix ker = M_T.mul(coeff_space).kernel_basis();
        coeff_space = coeff_space.mul(ker);
    }

    InvariantSubspace out;
    out.basis = C.mul(coeff_space).col_space_basis();
    out.dim_bound = 1 - spent;
    if (Rat(static_cast<long>(out.basis.cols()), v) < out.dim_bound)
        fail("BudgetExceeded", "invariant subspace smaller than the proven bound");
    return out;
}

} // namespace stralg
