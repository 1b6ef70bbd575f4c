#include "stralg/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace stralg {

int Quiver::vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return static_cast<int>(i);
    return -1;
}

int Quiver::arrow_index(const std::string& label) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].label == label) return static_cast<int>(i);
    return -1;
}

bool Path::operator<(const Path& o) const {
    if (arrows.size() != o.arrows.size()) return arrows.size() < o.arrows.size();
    if (arrows.empty()) return vertex < o.vertex;
    return arrows < o.arrows;
}

int StringAlgebra::path_src(const Path& p) const {
    return p.trivial() ? p.vertex : quiver_.arrows[static_cast<size_t>(p.arrows.back())].src;
}

int StringAlgebra::path_dst(const Path& p) const {
    return p.trivial() ? p.vertex : quiver_.arrows[static_cast<size_t>(p.arrows.front())].dst;
}

namespace {

bool composable(const Quiver& Q, const std::vector<int>& text) {
    for (size_t i = 0; i + 1 < text.size(); ++i)
        if (Q.arrows[static_cast<size_t>(text[i])].src != Q.arrows[static_cast<size_t>(text[i + 1])].dst)
            return false;
    return true;
}

bool ends_with_forbidden(const std::vector<Path>& forbidden, const std::vector<int>& text) {
    for (const Path& f : forbidden) {
        if (f.arrows.size() > text.size()) continue;
        if (std::equal(f.arrows.begin(), f.arrows.end(), text.end() - static_cast<long>(f.arrows.size())))
            return true;
    }
    return false;
}

} // namespace

Algebra StringAlgebra::make(Quiver quiver, std::vector<Path> forbidden, Field field) {
    std::set<std::string> labels;
    for (const auto& a : quiver.arrows) {
        if (!labels.insert(a.label).second)
            fail("SyntaxError", "duplicate arrow label '" + a.label + "'");
        if (a.src < 0 || a.src >= static_cast<int>(quiver.vertices.size()) ||
            a.dst < 0 || a.dst >= static_cast<int>(quiver.vertices.size()))
            fail("SyntaxError", "arrow '" + a.label + "' references an undeclared vertex");
    }
    for (const auto& v : quiver.vertices)
        if (labels.count(v) || std::count(quiver.vertices.begin(), quiver.vertices.end(), v) > 1)
            fail("SyntaxError", "vertex name '" + v + "' clashes");

    for (const Path& f : forbidden) {
        if (f.length() < 2)
            fail("SyntaxError", "forbidden paths must have length >= 2");
        if (!composable(quiver, f.arrows))
            fail("SyntaxError", "forbidden path is not composable");
    }

    // condition (1)
    std::vector<int> out_deg(quiver.vertices.size(), 0), in_deg(quiver.vertices.size(), 0);
    for (const auto& a : quiver.arrows) {
        ++out_deg[static_cast<size_t>(a.src)];
        ++in_deg[static_cast<size_t>(a.dst)];
    }
    for (size_t v = 0; v < quiver.vertices.size(); ++v)
        if (out_deg[v] > 2 || in_deg[v] > 2)
            fail("TooManyArrows", "vertex '" + quiver.vertices[v] + "' has more than two arrows " +
                                      (out_deg[v] > 2 ? "out" : "in"));

    // conditions (2) and (3); only length-2 generators matter for 2-paths
    auto two_path_forbidden = [&](int later, int first) {
        for (const Path& f : forbidden)
            if (f.arrows.size() == 2 && f.arrows[0] == later && f.arrows[1] == first) return true;
        return false;
    };
    for (size_t a = 0; a < quiver.arrows.size(); ++a) {
        std::vector<int> continuations, predecessors;
        for (size_t b = 0; b < quiver.arrows.size(); ++b) {
            if (quiver.arrows[b].src == quiver.arrows[a].dst &&
                !two_path_forbidden(static_cast<int>(b), static_cast<int>(a)))
                continuations.push_back(static_cast<int>(b));
            if (quiver.arrows[b].dst == quiver.arrows[a].src &&
                !two_path_forbidden(static_cast<int>(a), static_cast<int>(b)))
                predecessors.push_back(static_cast<int>(b));
        }
        if (continuations.size() > 1)
            fail("ConditionTwoViolation",
                 "arrow '" + quiver.arrows[a].label + "' has continuations '" +
                     quiver.arrows[static_cast<size_t>(continuations[0])].label + "' and '" +
                     quiver.arrows[static_cast<size_t>(continuations[1])].label + "' outside I");
        if (predecessors.size() > 1)
            fail("ConditionThreeViolation",
                 "arrow '" + quiver.arrows[a].label + "' has predecessors '" +
                     quiver.arrows[static_cast<size_t>(predecessors[0])].label + "' and '" +
                     quiver.arrows[static_cast<size_t>(predecessors[1])].label + "' outside I");
    }

    // Path basis by breadth-first extension.  Conditions (2)/(3) make the
    // continuation of a path depend only on its last arrow, so any valid
    // path longer than preperiod + period + longest forbidden factor can be
    // pumped forever: condition (4) fails.
    size_t bound = 2 * quiver.arrows.size() + 4;
    for (const Path& f : forbidden) bound += f.length();

    auto alg = std::shared_ptr<StringAlgebra>(new StringAlgebra());
    alg->quiver_ = std::move(quiver);
    alg->field_ = std::move(field);
    alg->forbidden_ = std::move(forbidden);
    const Quiver& Q = alg->quiver_;

    alg->index_of_trivial_.assign(Q.vertices.size(), -1);
    for (size_t v = 0; v < Q.vertices.size(); ++v) {
        Path e;
        e.vertex = static_cast<int>(v);
        alg->index_of_trivial_[v] = static_cast<int>(alg->basis_.size());
        alg->basis_.push_back(e);
    }

    std::vector<std::vector<int>> frontier;
    for (size_t a = 0; a < Q.arrows.size(); ++a) frontier.push_back({static_cast<int>(a)});
    size_t len = 1;
    while (!frontier.empty()) {
        if (len >= bound) {
            Path w;
            w.arrows = frontier.front();
            fail("NotNilpotent", "path '" + alg->path_str(w) + "' can be extended forever outside I");
        }
        // sort current layer by label sequence for the deterministic ordering
        std::sort(frontier.begin(), frontier.end(), [&](const auto& x, const auto& y) {
            std::vector<std::string> lx, ly;
            for (int a : x) lx.push_back(Q.arrows[static_cast<size_t>(a)].label);
            for (int a : y) ly.push_back(Q.arrows[static_cast<size_t>(a)].label);
            return lx < ly;
        });
        std::vector<std::vector<int>> next;
        for (auto& text : frontier) {
            Path p;
            p.arrows = text;
            alg->index_of_arrows_[text] = static_cast<int>(alg->basis_.size());
            alg->basis_.push_back(p);
            int src = Q.arrows[static_cast<size_t>(text.back())].src;
            for (size_t a = 0; a < Q.arrows.size(); ++a) {
                if (Q.arrows[a].dst != src) continue;
                std::vector<int> ext = text;
                ext.push_back(static_cast<int>(a));
                if (!ends_with_forbidden(alg->forbidden_, ext)) next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
        ++len;
    }
    size_t longest = 0;
    for (const Path& p : alg->basis_) longest = std::max(longest, p.length());
    alg->q_ = static_cast<int>(longest) + 1;
    return alg;
}

int StringAlgebra::basis_index(const Path& p) const {
    if (p.trivial()) return trivial_index(p.vertex);
    auto it = index_of_arrows_.find(p.arrows);
    return it == index_of_arrows_.end() ? -1 : it->second;
}

int StringAlgebra::trivial_index(int vertex) const {
    if (vertex < 0 || vertex >= static_cast<int>(index_of_trivial_.size())) return -1;
    return index_of_trivial_[static_cast<size_t>(vertex)];
}

AlgebraElement StringAlgebra::unit() const {
    AlgebraElement u;
    for (int idx : index_of_trivial_) u.coeff[idx] = 1;
    return u;
}

AlgebraElement StringAlgebra::elem_of_path(int basis_idx, Felt c) const {
    AlgebraElement e;
    if (c != 0) e.coeff[basis_idx] = c;
    return e;
}

std::string StringAlgebra::path_str(const Path& p) const {
    if (p.trivial()) return "e_" + quiver_.vertices[static_cast<size_t>(p.vertex)];
    std::string s;
    for (size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) s += '*';
        s += quiver_.arrows[static_cast<size_t>(p.arrows[i])].label;
    }
    return s;
}

std::string StringAlgebra::elem_str(const AlgebraElement& e) const {
    if (e.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [idx, c] : e.coeff) {
        if (!first) s += " + ";
        first = false;
        if (c != 1) s += std::to_string(c) + "*";
        s += path_str(basis_[static_cast<size_t>(idx)]);
    }
    return s;
}

AlgebraElement elem_add(const AlgebraElement& a, const AlgebraElement& b, const StringAlgebra& R) {
    AlgebraElement r = a;
    for (const auto& [idx, c] : b.coeff) {
        Felt s = R.field()->add(r.coeff.count(idx) ? r.coeff[idx] : 0, c);
        if (s == 0)
            r.coeff.erase(idx);
        else
            r.coeff[idx] = s;
    }
    return r;
}

AlgebraElement elem_scale(const AlgebraElement& a, Felt c, const StringAlgebra& R) {
    AlgebraElement r;
    if (c == 0) return r;
    for (const auto& [idx, v] : a.coeff) r.coeff[idx] = R.field()->mul(v, c);
    return r;
}

AlgebraElement elem_mul(const AlgebraElement& a, const AlgebraElement& b, const StringAlgebra& R) {
    AlgebraElement r;
    const auto& basis = R.path_basis();
    for (const auto& [ia, ca] : a.coeff) {
        const Path& pa = basis[static_cast<size_t>(ia)];
        for (const auto& [ib, cb] : b.coeff) {
            const Path& pb = basis[static_cast<size_t>(ib)];
            if (R.path_src(pa) != R.path_dst(pb)) continue; // non-composable
            Path prod;
            if (pa.trivial() && pb.trivial()) {
                prod.vertex = pa.vertex;
            } else {
                prod.arrows = pa.arrows;
                prod.arrows.insert(prod.arrows.end(), pb.arrows.begin(), pb.arrows.end());
            }
            int idx = R.basis_index(prod);
            if (idx < 0) continue; // contains a forbidden factor
            Felt add = R.field()->mul(ca, cb);
            Felt s = R.field()->add(r.coeff.count(idx) ? r.coeff[idx] : 0, add);
            if (s == 0)
                r.coeff.erase(idx);
            else
                r.coeff[idx] = s;
        }
    }
    return r;
}

RMatrix rmatrix_unit(Algebra R) {
    RMatrix m(R, 1, 1);
    m.at(0, 0) = R->unit();
    return m;
}

RMatrix rmatrix_mul(const RMatrix& a, const RMatrix& b) {
    if (a.cols != b.rows || !a.R->same(*b.R))
        fail("AlgebraMismatch", "incompatible R-matrix product");
    RMatrix r(a.R, a.rows, b.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < b.cols; ++j) {
            AlgebraElement acc;
            for (size_t k = 0; k < a.cols; ++k)
                acc = elem_add(acc, elem_mul(a.at(i, k), b.at(k, j), *a.R), *a.R);
            r.at(i, j) = acc;
        }
    return r;
}

RMatrix rmatrix_block_diag(const RMatrix& a, const RMatrix& b) {
    RMatrix r(a.R, a.rows + b.rows, a.cols + b.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j) r.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < b.rows; ++i)
        for (size_t j = 0; j < b.cols; ++j) r.at(a.rows + i, a.cols + j) = b.at(i, j);
    return r;
}

RMatrix rmatrix_lower_block(const RMatrix& a, const RMatrix& b, const RMatrix& c) {
    if (c.rows != b.rows || c.cols != a.cols)
        fail("AlgebraMismatch", "lower block has wrong shape");
    RMatrix r = rmatrix_block_diag(a, b);
    for (size_t i = 0; i < c.rows; ++i)
        for (size_t j = 0; j < c.cols; ++j) r.at(a.rows + i, j) = c.at(i, j);
    return r;
}

RMatrix rmatrix_zero_cols(const RMatrix& a, size_t t) {
    RMatrix r = a;
    for (size_t i = 0; i < r.rows; ++i)
        for (size_t j = 0; j < t && j < r.cols; ++j) r.at(i, j) = AlgebraElement();
    return r;
}

// --- R-matrix text grammar ------------------------------------------------

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string& text) : s(text) {}

    [[noreturn]] void err(const std::string& msg) const {
        fail("SyntaxError", msg + " at line " + std::to_string(line) + ", column " + std::to_string(col));
    }

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r')) {
            if (s[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    void advance() {
        ++col;
        ++pos;
    }

    bool eat(char c) {
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) err(std::string("expected '") + c + "'");
    }

    bool ident_char(char c) const {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    }

    std::string ident() {
        skip_ws();
        std::string id;
        while (pos < s.size() && ident_char(s[pos])) {
            id += s[pos];
            advance();
        }
        if (id.empty()) err("expected identifier");
        return id;
    }
};

struct EntryParser {
    Lexer& lx;
    const StringAlgebra& R;

    // pathseq := ident ('*' ident)*; resolves to a basis element
    AlgebraElement path_term(const std::string& first) {
        std::vector<std::string> labels{first};
        while (lx.peek() == '*') {
            lx.advance();
            labels.push_back(lx.ident());
        }
        Path p;
        if (labels.size() == 1 && labels[0].rfind("e_", 0) == 0) {
            int v = R.quiver().vertex_index(labels[0].substr(2));
            if (v < 0) lx.err("unknown vertex in '" + labels[0] + "'");
            p.vertex = v;
        } else {
            for (const std::string& l : labels) {
                int a = R.quiver().arrow_index(l);
                if (a < 0) fail("UnknownPath", "no arrow named '" + l + "'");
                p.arrows.push_back(a);
            }
        }
        int idx = R.basis_index(p);
        if (idx < 0) {
            if (!p.trivial() && !composable(R.quiver(), p.arrows))
                fail("UnknownPath", "path '" + R.path_str(p) + "' is not composable");
            // a path inside I is simply zero
            return AlgebraElement();
        }
        return R.elem_of_path(idx);
    }

    // term := int ('*' pathseq)? | pathseq
    AlgebraElement term() {
        char c = lx.peek();
        if (c >= '0' && c <= '9') {
            uint64_t v = 0;
            while (lx.pos < lx.s.size() && lx.s[lx.pos] >= '0' && lx.s[lx.pos] <= '9') {
                v = v * 10 + static_cast<uint64_t>(lx.s[lx.pos] - '0');
                lx.advance();
            }
            Felt coeff = R.field()->from_int(v);
            if (lx.peek() == '*') {
                lx.advance();
                return elem_scale(path_term(lx.ident()), coeff, R);
            }
            return elem_scale(R.unit(), coeff, R);
        }
        return path_term(lx.ident());
    }

    // entry := ['-'] term (('+'|'-') term)*
    AlgebraElement entry() {
        AlgebraElement acc;
        bool negate = lx.eat('-');
        AlgebraElement t = term();
        acc = negate ? elem_scale(t, R.field()->neg(1), R) : t;
        while (true) {
            char c = lx.peek();
            if (c == '+') {
                lx.advance();
                acc = elem_add(acc, term(), R);
            } else if (c == '-') {
                lx.advance();
                acc = elem_add(acc, elem_scale(term(), R.field()->neg(1), R), R);
            } else {
                break;
            }
        }
        return acc;
    }
};

} // namespace

RMatrix rmatrix_parse(const std::string& text, Algebra R) {
    Lexer lx(text);
    EntryParser ep{lx, *R};
    lx.expect('[');
    std::vector<std::vector<AlgebraElement>> rows;
    while (true) {
        lx.expect('[');
        std::vector<AlgebraElement> row;
        if (lx.peek() != ']') {
            row.push_back(ep.entry());
            while (lx.eat(',')) row.push_back(ep.entry());
        }
        lx.expect(']');
        rows.push_back(std::move(row));
        if (!lx.eat(',')) break;
    }
    lx.expect(']');
    if (lx.peek() != '\0') lx.err("trailing input after matrix");
    size_t cols = rows.empty() ? 0 : rows[0].size();
    for (const auto& r : rows)
        if (r.size() != cols) lx.err("ragged rows");
    RMatrix m(R, rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

std::string rmatrix_emit(const RMatrix& a) {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < a.rows; ++i) {
        if (i) os << ',';
        os << '[';
        for (size_t j = 0; j < a.cols; ++j) {
            if (j) os << ", ";
            const AlgebraElement& e = a.at(i, j);
            if (e.is_zero()) {
                os << '0';
                continue;
            }
            bool first = true;
            for (const auto& [idx, c] : e.coeff) {
                if (!first) os << " + ";
                first = false;
                if (c != 1) os << static_cast<unsigned>(c) << '*';
                os << a.R->path_str(a.R->path_basis()[static_cast<size_t>(idx)]);
            }
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

} // namespace stralg
