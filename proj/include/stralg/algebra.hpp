#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "stralg/gf.hpp"

namespace stralg {

struct Quiver {
    struct Arrow {
        std::string label;
        int src; // source vertex index
        int dst; // target vertex index
    };
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int vertex_index(const std::string& name) const;
    int arrow_index(const std::string& label) const; // -1 if absent
};

// A path is a composable sequence of arrows written the way relations are
// written in the input files: leftmost arrow applied last.  So for the text
// sequence [b, a] the walk is "a then b" and composability means
// src(arrows[i]) == dst(arrows[i+1]).  The trivial path e_v has an empty
// arrow sequence and vertex == v.
struct Path {
    int vertex = -1;              // used only when arrows is empty
    std::vector<int> arrows;

    bool trivial() const { return arrows.empty(); }
    size_t length() const { return arrows.size(); }
    bool operator==(const Path& o) const { return vertex == o.vertex && arrows == o.arrows; }
    bool operator<(const Path& o) const;
};

class StringAlgebra;
using Algebra = std::shared_ptr<const StringAlgebra>;

// Element of R = KQ/I as a sparse combination of basis paths.
// Keys are indices into the algebra's path basis; zero coefficients absent.
struct AlgebraElement {
    std::map<int, Felt> coeff;

    bool is_zero() const { return coeff.empty(); }
    bool operator==(const AlgebraElement& o) const { return coeff == o.coeff; }
};

AlgebraElement elem_add(const AlgebraElement& a, const AlgebraElement& b, const StringAlgebra& R);
AlgebraElement elem_scale(const AlgebraElement& a, Felt c, const StringAlgebra& R);
AlgebraElement elem_mul(const AlgebraElement& a, const AlgebraElement& b, const StringAlgebra& R);

// KQ/I for a monomial ideal I satisfying the string-algebra conditions:
//   (1) at most two arrows in and out of each vertex,
//   (2) for each arrow a at most one b with src(b)==dst(a) and "b a" not in I,
//   (3) for each arrow a at most one b with dst(b)==src(a) and "a b" not in I,
//   (4) some q with every path of length >= q in I.
// Validation computes the finite path basis (paths with no forbidden factor)
// and q = 1 + longest basis path length, or reports the violated condition.
class StringAlgebra {
public:
    static Algebra make(Quiver quiver, std::vector<Path> forbidden, Field field);

    const Quiver& quiver() const { return quiver_; }
    const Field& field() const { return field_; }
    const std::vector<Path>& forbidden() const { return forbidden_; }
    const std::vector<Path>& path_basis() const { return basis_; }
    int nilpotency_bound() const { return q_; }
    size_t dim() const { return basis_.size(); }

    int basis_index(const Path& p) const; // -1 when p has a forbidden factor
    int trivial_index(int vertex) const;
    int path_src(const Path& p) const;
    int path_dst(const Path& p) const;

    // True when the text sequence contains no forbidden factor and is
    // composable; trivial paths are always valid.
    bool path_is_basis(const Path& p) const { return basis_index(p) >= 0; }

    AlgebraElement unit() const;              // sum of all e_v
    AlgebraElement elem_of_path(int basis_idx, Felt c = 1) const;
    std::string path_str(const Path& p) const;
    std::string elem_str(const AlgebraElement& e) const;

    bool same(const StringAlgebra& o) const { return this == &o; }

private:
    StringAlgebra() = default;

    Quiver quiver_;
    Field field_;
    std::vector<Path> forbidden_;
    std::vector<Path> basis_;
    int q_ = 1;
    std::map<std::vector<int>, int> index_of_arrows_;
    std::vector<int> index_of_trivial_;
};

struct RMatrix {
    Algebra R;
    size_t rows = 0, cols = 0;
    std::vector<AlgebraElement> e; // row-major

    RMatrix() = default;
    RMatrix(Algebra alg, size_t r, size_t c)
        : R(std::move(alg)), rows(r), cols(c), e(r * c) {}

    const AlgebraElement& at(size_t i, size_t j) const { return e[i * cols + j]; }
    AlgebraElement& at(size_t i, size_t j) { return e[i * cols + j]; }
    bool operator==(const RMatrix& o) const {
        return rows == o.rows && cols == o.cols && e == o.e;
    }
};

RMatrix rmatrix_unit(Algebra R);                      // 1x1 identity of R
RMatrix rmatrix_mul(const RMatrix& a, const RMatrix& b);
RMatrix rmatrix_block_diag(const RMatrix& a, const RMatrix& b);
RMatrix rmatrix_lower_block(const RMatrix& a, const RMatrix& b, const RMatrix& c); // [[A,0],[C,B]]
// Zeroes columns [0, t) — the matrix the pp dimension formula calls B.
RMatrix rmatrix_zero_cols(const RMatrix& a, size_t t);

// Text grammar: rows in brackets, entries are +/- combinations of basis
// paths with optional integer coefficients, e.g. "[[e_v - x, y],[0, 2*x*y]]".
// Multi-arrow paths join labels with '*' (leftmost applied last); bare
// integers mean multiples of the unit.
RMatrix rmatrix_parse(const std::string& text, Algebra R);
std::string rmatrix_emit(const RMatrix& a);

} // namespace stralg
