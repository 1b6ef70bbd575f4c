#include "stralg/rmodule.hpp"

#include <algorithm>
#include <sstream>

namespace stralg {

int letter_src(const Letter& l, const Quiver& Q) {
    const auto& a = Q.arrows[static_cast<size_t>(l.arrow)];
    return l.inv ? a.dst : a.src;
}

int letter_dst(const Letter& l, const Quiver& Q) {
    const auto& a = Q.arrows[static_cast<size_t>(l.arrow)];
    return l.inv ? a.src : a.dst;
}

StringWord StringWord::inverse() const {
    StringWord r;
    r.vertex = vertex;
    r.letters.resize(letters.size());
    std::transform(letters.rbegin(), letters.rend(), r.letters.begin(),
                   [](const Letter& l) { return l.inverse(); });
    return r;
}

bool StringWord::operator<(const StringWord& o) const {
    if (letters.size() != o.letters.size()) return letters.size() < o.letters.size();
    if (trivial()) return vertex < o.vertex;
    return letters < o.letters;
}

namespace {

// A maximal run of same-direction letters spells a path of the quiver; the
// string conditions demand that the path avoids I.  For direct letters the
// path text is the run in word order, for inverse letters the reversed run
// of underlying arrows.
bool run_hits_forbidden(const std::vector<Letter>& letters, size_t lo, size_t hi, bool inv,
                        const StringAlgebra& R, size_t* where) {
    std::vector<int> text;
    if (!inv) {
        for (size_t i = lo; i < hi; ++i) text.push_back(letters[i].arrow);
    } else {
        for (size_t i = hi; i-- > lo;) text.push_back(letters[i].arrow);
    }
    for (const Path& f : R.forbidden()) {
        size_t fl = f.arrows.size();
        if (fl > text.size()) continue;
        for (size_t s = 0; s + fl <= text.size(); ++s) {
            if (std::equal(f.arrows.begin(), f.arrows.end(), text.begin() + static_cast<long>(s))) {
                *where = lo + s;
                return true;
            }
        }
    }
    return false;
}

StringCheck check_letters(const std::vector<Letter>& letters, const StringAlgebra& R) {
    StringCheck rep;
    const Quiver& Q = R.quiver();
    for (const Letter& l : letters) {
        if (l.arrow < 0 || l.arrow >= static_cast<int>(Q.arrows.size())) {
            rep.ok = false;
            rep.condition = 1;
            rep.detail = "letter references an unknown arrow";
            return rep;
        }
    }
    for (size_t i = 0; i + 1 < letters.size(); ++i) {
        if (letter_dst(letters[i + 1], Q) != letter_src(letters[i], Q)) {
            rep.ok = false;
            rep.condition = 1;
            rep.position = i;
            rep.detail = "consecutive letters do not share a vertex";
            return rep;
        }
        if (letters[i] == letters[i + 1].inverse()) {
            rep.ok = false;
            rep.condition = 2;
            rep.position = i;
            rep.detail = "immediate backtracking";
            return rep;
        }
    }
    size_t i = 0;
    while (i < letters.size()) {
        size_t j = i;
        while (j < letters.size() && letters[j].inv == letters[i].inv) ++j;
        size_t where = 0;
        if (run_hits_forbidden(letters, i, j, letters[i].inv, R, &where)) {
            rep.ok = false;
            rep.condition = 3;
            rep.position = where;
            rep.detail = "a factor of the word lies in I";
            return rep;
        }
        i = j;
    }
    return rep;
}

} // namespace

StringCheck check_string(const StringWord& w, const StringAlgebra& R) {
    if (w.trivial()) {
        StringCheck rep;
        if (w.vertex < 0 || w.vertex >= static_cast<int>(R.quiver().vertices.size())) {
            rep.ok = false;
            rep.condition = 1;
            rep.detail = "trivial word at an unknown vertex";
        }
        return rep;
    }
    return check_letters(w.letters, R);
}

void require_string(const StringWord& w, const StringAlgebra& R) {
    StringCheck rep = check_string(w, R);
    if (!rep.ok)
        fail("InvalidString", "condition " + std::to_string(rep.condition) + " at position " +
                                  std::to_string(rep.position) + ": " + rep.detail);
}

StringWord canonical_word(const StringWord& w) {
    StringWord inv = w.inverse();
    return inv < w ? inv : w;
}

std::string word_str(const StringWord& w, const StringAlgebra& R) {
    if (w.trivial()) return "@" + R.quiver().vertices[static_cast<size_t>(w.vertex)];
    std::string s;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i) s += ' ';
        s += R.quiver().arrows[static_cast<size_t>(w.letters[i].arrow)].label;
        if (w.letters[i].inv) s += "^-1";
    }
    return s;
}

StringWord word_parse(const std::string& text, const StringAlgebra& R) {
    StringWord w;
    std::istringstream is(text);
    std::string tok;
    std::vector<std::string> toks;
    while (is >> tok) toks.push_back(tok);
    if (toks.empty()) fail("SyntaxError", "empty string word");
    if (toks[0][0] == '@') {
        if (toks.size() != 1) fail("SyntaxError", "trivial word takes a single '@vertex' token");
        int v = R.quiver().vertex_index(toks[0].substr(1));
        if (v < 0) fail("SyntaxError", "unknown vertex '" + toks[0].substr(1) + "'");
        w.vertex = v;
        return w;
    }
    for (const std::string& t : toks) {
        Letter l;
        std::string label = t;
        if (label.size() > 3 && label.substr(label.size() - 3) == "^-1") {
            l.inv = true;
            label = label.substr(0, label.size() - 3);
        }
        l.arrow = R.quiver().arrow_index(label);
        if (l.arrow < 0) fail("SyntaxError", "unknown arrow '" + label + "'");
        w.letters.push_back(l);
    }
    return w;
}

namespace {

StringWord rotate_word(const StringWord& w, size_t by) {
    StringWord r = w;
    std::rotate(r.letters.begin(), r.letters.begin() + static_cast<long>(by), r.letters.end());
    return r;
}

size_t forbidden_window(const StringAlgebra& R) {
    size_t win = static_cast<size_t>(R.nilpotency_bound());
    for (const Path& f : R.forbidden()) win = std::max(win, f.length());
    return win + 2;
}

} // namespace

void require_band_word(const StringWord& w, const StringAlgebra& R) {
    size_t n = w.length();
    if (n < 1) fail("NotCyclic", "a band word has positive length");
    // validity of S^T (T covering the condition window) certifies that every
    // rotation and every power is a string
    size_t reps = 2 + (forbidden_window(R) + n - 1) / n;
    StringWord repeated;
    for (size_t r = 0; r < reps; ++r)
        repeated.letters.insert(repeated.letters.end(), w.letters.begin(), w.letters.end());
    StringCheck rep = check_letters(repeated.letters, R);
    if (!rep.ok)
        fail("NotCyclic", "the repeated word violates string condition " +
                              std::to_string(rep.condition) + ": " + rep.detail);
    for (size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (size_t i = 0; i + d < n && periodic; ++i)
            periodic = w.letters[i] == w.letters[i + d];
        if (periodic) fail("NotCyclic", "band word is a proper power of a shorter cyclic word");
    }
}

StringWord canonical_band_rotation(const StringWord& w) {
    StringWord best = w;
    StringWord inv = w.inverse();
    for (size_t i = 0; i < w.length(); ++i) {
        StringWord a = rotate_word(w, i), b = rotate_word(inv, i);
        if (a < best) best = a;
        if (b < best) best = b;
    }
    return best;
}

std::string component_label(const Component& c, const StringAlgebra& R) {
    if (const StringWord* w = c.word()) return "s:" + word_str(canonical_word(*w), R);
    const BandData& b = *c.band();
    return "b:" + word_str(canonical_band_rotation(b.word), R) + ";f=" + b.f.str() +
           ";n=" + std::to_string(b.power);
}

int component_dim(const Component& c, const StringAlgebra& R) {
    (void)R;
    if (const StringWord* w = c.word()) return static_cast<int>(w->length()) + 1;
    const BandData& b = *c.band();
    return static_cast<int>(b.word.length()) * b.power * b.f.degree();
}

RModule RModule::zero(Algebra R) {
    RModule m;
    m.R_ = R;
    m.dim_ = 0;
    m.action_.assign(R->quiver().arrows.size(), Matrix(R->field(), 0, 0));
    m.components_known_ = true;
    return m;
}

RModule RModule::string_module(const StringWord& S, Algebra R) {
    require_string(S, *R);
    RModule m;
    m.R_ = R;
    const Quiver& Q = R->quiver();
    if (S.trivial()) {
        m.dim_ = 1;
        m.vertex_of_basis_ = {S.vertex};
        for (size_t a = 0; a < Q.arrows.size(); ++a)
            m.action_.push_back(Matrix(R->field(), 1, 1));
    } else {
        size_t n = S.length();
        m.dim_ = static_cast<int>(n) + 1;
        m.vertex_of_basis_.resize(n + 1);
        m.vertex_of_basis_[0] = letter_dst(S.letters[0], Q);
        for (size_t i = 1; i <= n; ++i)
            m.vertex_of_basis_[i] = letter_src(S.letters[i - 1], Q);
        for (size_t a = 0; a < Q.arrows.size(); ++a) {
            Matrix A(R->field(), n + 1, n + 1);
            for (size_t i = 0; i <= n; ++i) {
                // direct letter C_i = a sends z_i down to z_{i-1}
                if (i >= 1 && !S.letters[i - 1].inv &&
                    S.letters[i - 1].arrow == static_cast<int>(a))
                    A.at(i - 1, i) = 1;
                // inverse letter C_{i+1} = a^{-1} sends z_i up to z_{i+1}
                if (i < n && S.letters[i].inv && S.letters[i].arrow == static_cast<int>(a))
                    A.at(i + 1, i) = 1;
            }
            m.action_.push_back(std::move(A));
        }
    }
    m.components_.push_back(Component{canonical_word(S)});
    m.components_known_ = true;
    return m;
}

RModule RModule::band_module(const BandData& B, Algebra R) {
    require_band_word(B.word, *R);
    if (B.power < 1) fail("ReducibleF", "band power must be >= 1");
    if (!poly_is_monic(B.f) || B.f.degree() < 1 || !poly_is_irreducible(B.f, *R->field()))
        fail("ReducibleF", "band polynomial must be monic irreducible");
    if (B.f.coeff(0) == 0) fail("FVanishesAtZero", "f(0) = 0 makes the twist non-invertible");

    const Quiver& Q = R->quiver();
    const Field& K = R->field();
    Poly g = poly_pow(B.f, static_cast<unsigned>(B.power), *K);
    int d = g.degree();
    size_t n = B.word.length();

    // companion matrix of f^power: the twist phi, multiplication by x on V
    Matrix phi(K, static_cast<size_t>(d), static_cast<size_t>(d));
    for (int j = 0; j + 1 < d; ++j) phi.at(static_cast<size_t>(j) + 1, static_cast<size_t>(j)) = 1;
    for (int i = 0; i < d; ++i)
        phi.at(static_cast<size_t>(i), static_cast<size_t>(d) - 1) = K->neg(g.coeff(static_cast<size_t>(i)));
    auto phi_inv_opt = phi.solve(Matrix::identity(K, static_cast<size_t>(d)));
    if (!phi_inv_opt) fail("FVanishesAtZero", "twist is singular");
    Matrix phi_inv = *phi_inv_opt;
    Matrix id = Matrix::identity(K, static_cast<size_t>(d));

    RModule m;
    m.R_ = R;
    m.dim_ = static_cast<int>(n) * d;
    m.vertex_of_basis_.resize(static_cast<size_t>(m.dim_));
    for (size_t i = 1; i <= n; ++i) {
        int v = letter_src(B.word.letters[i - 1], Q);
        for (int j = 0; j < d; ++j)
            m.vertex_of_basis_[(i - 1) * static_cast<size_t>(d) + static_cast<size_t>(j)] = v;
    }

    auto place = [&](Matrix& A, size_t dst_slice, size_t src_slice, const Matrix& block) {
        size_t r0 = (dst_slice - 1) * static_cast<size_t>(d);
        size_t c0 = (src_slice - 1) * static_cast<size_t>(d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                A.at(r0 + static_cast<size_t>(r), c0 + static_cast<size_t>(c)) =
                    block.at(static_cast<size_t>(r), static_cast<size_t>(c));
    };

    for (size_t a = 0; a < Q.arrows.size(); ++a) {
        Matrix A(K, static_cast<size_t>(m.dim_), static_cast<size_t>(m.dim_));
        for (size_t i = 1; i <= n; ++i) {
            const Letter& ci = B.word.letters[i - 1];
            // direct letter C_i moves slice i down to slice i-1 (wrapping),
            // through phi exactly at the 2 -> 1 boundary
            if (!ci.inv && ci.arrow == static_cast<int>(a)) {
                size_t dst = (i == 1) ? n : i - 1;
                place(A, dst, i, i == 2 ? phi : id);
            }
            // inverse letter C_{i+1} moves slice i up to slice i+1
            // (wrapping), through phi^{-1} exactly at the 1 -> 2 boundary
            const Letter& cnext = B.word.letters[i % n];
            if (cnext.inv && cnext.arrow == static_cast<int>(a)) {
                size_t dst = (i == n) ? 1 : i + 1;
                place(A, dst, i, i == 1 ? phi_inv : id);
            }
        }
        m.action_.push_back(std::move(A));
    }

    BandData canon = B;
    canon.word = canonical_band_rotation(B.word);
    m.components_.push_back(Component{canon});
    m.components_known_ = true;
    return m;
}

RModule RModule::direct_sum(const RModule& a, const RModule& b) {
    if (!a.R_->same(*b.R_)) fail("AlgebraMismatch", "direct sum over different algebras");
    RModule m;
    m.R_ = a.R_;
    m.dim_ = a.dim_ + b.dim_;
    m.vertex_of_basis_ = a.vertex_of_basis_;
    m.vertex_of_basis_.insert(m.vertex_of_basis_.end(), b.vertex_of_basis_.begin(),
                              b.vertex_of_basis_.end());
    for (size_t i = 0; i < a.action_.size(); ++i)
        m.action_.push_back(Matrix::block_diag(a.action_[i], b.action_[i]));
    m.components_known_ = a.components_known_ && b.components_known_;
    if (m.components_known_) {
        m.components_ = a.components_;
        m.components_.insert(m.components_.end(), b.components_.begin(), b.components_.end());
    }
    return m;
}

RModule RModule::power(const RModule& a, int k) {
    RModule m = a;
    for (int i = 1; i < k; ++i) m = direct_sum(m, a);
    return m;
}

RModule RModule::raw(Algebra R, std::vector<int> vertex_of_basis, std::vector<Matrix> action) {
    RModule m;
    m.R_ = R;
    m.dim_ = static_cast<int>(vertex_of_basis.size());
    m.vertex_of_basis_ = std::move(vertex_of_basis);
    m.action_ = std::move(action);
    if (m.action_.size() != R->quiver().arrows.size())
        fail("AlgebraMismatch", "one action matrix per arrow required");
    return m;
}

RModule RModule::regular(Algebra R) {
    const auto& basis = R->path_basis();
    std::vector<int> grading;
    for (const Path& p : basis) grading.push_back(R->path_dst(p));
    std::vector<Matrix> action;
    for (size_t a = 0; a < R->quiver().arrows.size(); ++a) {
        Matrix A(R->field(), basis.size(), basis.size());
        for (size_t j = 0; j < basis.size(); ++j) {
            Path prod;
            if (R->quiver().arrows[a].src != R->path_dst(basis[j])) continue;
            prod.arrows.push_back(static_cast<int>(a));
            prod.arrows.insert(prod.arrows.end(), basis[j].arrows.begin(), basis[j].arrows.end());
            int idx = R->basis_index(prod);
            if (idx >= 0) A.at(static_cast<size_t>(idx), j) = 1;
        }
        action.push_back(std::move(A));
    }
    RModule m = raw(R, std::move(grading), std::move(action));
    return m;
}

Matrix RModule::vertex_projector(int v) const {
    Matrix P(R_->field(), static_cast<size_t>(dim_), static_cast<size_t>(dim_));
    for (size_t i = 0; i < vertex_of_basis_.size(); ++i)
        if (vertex_of_basis_[i] == v) P.at(i, i) = 1;
    return P;
}

Matrix RModule::path_action(const Path& p) const {
    if (p.trivial()) return vertex_projector(p.vertex);
    Matrix A = action(p.arrows.back());
    for (size_t i = p.arrows.size() - 1; i-- > 0;) A = action(p.arrows[i]).mul(A);
    return A;
}

Matrix RModule::element_action(const AlgebraElement& e) const {
    Matrix A(R_->field(), static_cast<size_t>(dim_), static_cast<size_t>(dim_));
    for (const auto& [idx, c] : e.coeff)
        A = A.add(path_action(R_->path_basis()[static_cast<size_t>(idx)]).scaled(c));
    return A;
}

ModuleCheck module_check(const RModule& M, const StringAlgebra& R) {
    ModuleCheck rep;
    const Quiver& Q = R.quiver();
    size_t d = static_cast<size_t>(M.dim());
    if (M.vertex_of_basis().size() != d) {
        rep.ok = false;
        rep.violation = "grading size mismatch";
        return rep;
    }
    for (int v : M.vertex_of_basis())
        if (v < 0 || v >= static_cast<int>(Q.vertices.size())) {
            rep.ok = false;
            rep.violation = "grading references an unknown vertex";
            return rep;
        }
    for (size_t a = 0; a < Q.arrows.size(); ++a) {
        const Matrix& A = M.action(static_cast<int>(a));
        if (A.rows() != d || A.cols() != d) {
            rep.ok = false;
            rep.violation = "action matrix for '" + Q.arrows[a].label + "' has wrong shape";
            return rep;
        }
        Matrix graded = M.vertex_projector(Q.arrows[a].dst).mul(A).mul(M.vertex_projector(Q.arrows[a].src));
        if (!(graded == A)) {
            rep.ok = false;
            rep.violation = "action of '" + Q.arrows[a].label + "' does not respect the grading";
            return rep;
        }
    }
    for (const Path& f : R.forbidden()) {
        if (!M.path_action(f).is_zero()) {
            rep.ok = false;
            rep.violation = "forbidden monomial '" + R.path_str(f) + "' acts nontrivially";
            return rep;
        }
    }
    return rep;
}

HomSpace hom_space(const RModule& Q, const RModule& M) {
    if (!Q.algebra()->same(*M.algebra())) fail("AlgebraMismatch", "hom over different algebras");
    const Field& K = M.algebra()->field();
    size_t dq = static_cast<size_t>(Q.dim()), dm = static_cast<size_t>(M.dim());

    // grading-compatible unknowns F[i][j], vertex(M,i) == vertex(Q,j)
    std::vector<std::pair<size_t, size_t>> unknowns;
    std::vector<std::vector<int>> slot(dm, std::vector<int>(dq, -1));
    for (size_t i = 0; i < dm; ++i)
        for (size_t j = 0; j < dq; ++j)
            if (M.vertex_of_basis()[i] == Q.vertex_of_basis()[j]) {
                slot[i][j] = static_cast<int>(unknowns.size());
                unknowns.emplace_back(i, j);
            }

    size_t narrows = M.algebra()->quiver().arrows.size();
    std::vector<std::vector<Felt>> rows;
    for (size_t a = 0; a < narrows; ++a) {
        const Matrix& AQ = Q.action(static_cast<int>(a));
        const Matrix& AM = M.action(static_cast<int>(a));
        for (size_t r = 0; r < dm; ++r)
            for (size_t c = 0; c < dq; ++c) {
                std::vector<Felt> row(unknowns.size(), 0);
                bool nonzero = false;
                // (F * AQ - AM * F)[r][c] = 0
                for (size_t j = 0; j < dq; ++j) {
                    Felt v = AQ.at(j, c);
                    if (v && slot[r][j] >= 0) {
                        size_t s = static_cast<size_t>(slot[r][j]);
                        row[s] = K->add(row[s], v);
                        nonzero = true;
                    }
                }
                for (size_t i = 0; i < dm; ++i) {
                    Felt v = AM.at(r, i);
                    if (v && slot[i][c] >= 0) {
                        size_t s = static_cast<size_t>(slot[i][c]);
                        row[s] = K->sub(row[s], v);
                        nonzero = true;
                    }
                }
                if (nonzero) rows.push_back(std::move(row));
            }
    }

    Matrix sys(K, rows.size(), unknowns.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < unknowns.size(); ++j) sys.at(i, j) = rows[i][j];
    Matrix ker = rows.empty() ? Matrix::identity(K, unknowns.size()) : sys.kernel_basis();

    HomSpace H;
    H.dim = ker.cols();
    for (size_t b = 0; b < ker.cols(); ++b) {
        Matrix F(K, dm, dq);
        for (size_t u = 0; u < unknowns.size(); ++u)
            F.at(unknowns[u].first, unknowns[u].second) = ker.at(u, b);
        H.basis.push_back(std::move(F));
    }
    return H;
}

Matrix radical_submodule(const RModule& M) {
    Matrix acc(M.algebra()->field(), static_cast<size_t>(M.dim()), 0);
    for (size_t a = 0; a < M.algebra()->quiver().arrows.size(); ++a)
        acc = Matrix::hcat(acc, M.action(static_cast<int>(a)));
    return acc.col_space_basis();
}

RModule restrict_to_submodule(const RModule& M, const Matrix& basis) {
    const Field& K = M.algebra()->field();
    Matrix C = basis.col_space_basis();
    const Quiver& Q = M.algebra()->quiver();

    // a submodule is closed under the vertex idempotents, hence graded;
    // assemble a graded basis vertex block by vertex block
    Matrix graded(K, C.rows(), 0);
    std::vector<int> grading;
    for (size_t v = 0; v < Q.vertices.size(); ++v) {
        Matrix part = M.vertex_projector(static_cast<int>(v)).mul(C).col_space_basis();
        if (!subspace_contains(C, part))
            fail("NotSubmodule", "span is not closed under e_" + Q.vertices[v]);
        for (size_t c = 0; c < part.cols(); ++c) grading.push_back(static_cast<int>(v));
        graded = Matrix::hcat(graded, part);
    }
    if (graded.cols() != C.cols()) fail("NotSubmodule", "span is not graded");

    std::vector<Matrix> action;
    for (size_t a = 0; a < Q.arrows.size(); ++a) {
        auto X = graded.solve(M.action(static_cast<int>(a)).mul(graded));
        if (!X) fail("NotSubmodule", "span is not invariant under arrow '" + Q.arrows[a].label + "'");
        action.push_back(*X);
    }
    return RModule::raw(M.algebra(), std::move(grading), std::move(action));
}

} // namespace stralg
