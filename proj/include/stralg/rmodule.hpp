#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stralg/algebra.hpp"

namespace stralg {

// A letter is an arrow or its formal inverse.
struct Letter {
    int arrow = -1;
    bool inv = false;

    bool operator==(const Letter& o) const { return arrow == o.arrow && inv == o.inv; }
    bool operator<(const Letter& o) const {
        return arrow != o.arrow ? arrow < o.arrow : inv < o.inv;
    }
    Letter inverse() const { return Letter{arrow, !inv}; }
};

// A walk C_1 C_2 ... C_n through the quiver with t(C_{i+1}) = s(C_i), no
// immediate backtracking, and no direct or inverse factor inside I; or the
// trivial word at a vertex (length 0).
struct StringWord {
    int vertex = -1;             // only for the trivial word
    std::vector<Letter> letters;

    bool trivial() const { return letters.empty(); }
    size_t length() const { return letters.size(); }
    StringWord inverse() const;
    bool operator==(const StringWord& o) const {
        return trivial() ? (o.trivial() && vertex == o.vertex) : letters == o.letters;
    }
    bool operator<(const StringWord& o) const;
};

// s/t of a letter with the formal-inverse convention.
int letter_src(const Letter& l, const Quiver& Q);
int letter_dst(const Letter& l, const Quiver& Q);

// Validates the three string conditions; on failure returns the violated
// condition index (1..3) and the position.
struct StringCheck {
    bool ok = true;
    int condition = 0;
    size_t position = 0;
    std::string detail;
};
StringCheck check_string(const StringWord& w, const StringAlgebra& R);
void require_string(const StringWord& w, const StringAlgebra& R); // throws InvalidString

// lexicographically smaller of (word, inverse word)
StringWord canonical_word(const StringWord& w);
std::string word_str(const StringWord& w, const StringAlgebra& R);
StringWord word_parse(const std::string& text, const StringAlgebra& R);

// Band datum: a primitive cyclic string plus the indecomposable automorphism
// phi = companion matrix of f^power on V = K[x]/f^power.
struct BandData {
    StringWord word;
    Poly f;      // irreducible monic, f != x
    int power = 1;

    bool operator==(const BandData& o) const {
        return word == o.word && f == o.f && power == o.power;
    }
};

// all rotations (and powers crossing the seam) are strings, word primitive
void require_band_word(const StringWord& w, const StringAlgebra& R);
// lexicographically least among rotations of the word and of its inverse
StringWord canonical_band_rotation(const StringWord& w);

struct Component {
    std::variant<StringWord, BandData> data;

    bool is_band() const { return std::holds_alternative<BandData>(data); }
    const StringWord* word() const { return std::get_if<StringWord>(&data); }
    const BandData* band() const { return std::get_if<BandData>(&data); }
};

std::string component_label(const Component& c, const StringAlgebra& R);
int component_dim(const Component& c, const StringAlgebra& R);

// Finite dimensional representation: vertex grading of the basis plus one
// action matrix per arrow.  Immutable after construction.  Constructors keep
// the Krull-Schmidt component list when it is known (string/band/direct-sum
// built modules); raw modules have an empty list.
class RModule {
public:
    RModule() = default; // empty shell; every factory below returns a usable value

    static RModule string_module(const StringWord& S, Algebra R);
    static RModule band_module(const BandData& B, Algebra R);
    static RModule direct_sum(const RModule& a, const RModule& b);
    static RModule power(const RModule& a, int k);
    static RModule zero(Algebra R);
    static RModule raw(Algebra R, std::vector<int> vertex_of_basis, std::vector<Matrix> action);
    static RModule regular(Algebra R); // R as a left module over itself

    int dim() const { return dim_; }
    const Algebra& algebra() const { return R_; }
    const std::vector<int>& vertex_of_basis() const { return vertex_of_basis_; }
    const Matrix& action(int arrow) const { return action_[static_cast<size_t>(arrow)]; }
    const std::vector<Component>& components() const { return components_; }
    bool has_components() const { return components_known_; }

    Matrix vertex_projector(int v) const;
    Matrix path_action(const Path& p) const;
    Matrix element_action(const AlgebraElement& e) const;

private:

    Algebra R_;
    int dim_ = 0;
    std::vector<int> vertex_of_basis_;
    std::vector<Matrix> action_;
    std::vector<Component> components_;
    bool components_known_ = false;
};

// Verifies the representation axioms: grading projectors behave, each arrow
// maps its source block into its target block, every forbidden monomial acts
// as zero.  Report-valued.
struct ModuleCheck {
    bool ok = true;
    std::string violation;
};
ModuleCheck module_check(const RModule& M, const StringAlgebra& R);

// Basis matrices of Hom_R(Q, M) (each dim(M) x dim(Q)), found by solving the
// K-linear intertwining system.
struct HomSpace {
    size_t dim = 0;
    std::vector<Matrix> basis;
};
HomSpace hom_space(const RModule& Q, const RModule& M);

// Canonical basis of JM, J the arrow ideal.
Matrix radical_submodule(const RModule& M);

// The submodule structure induced on a column span; NotSubmodule if the span
// is not arrow-invariant.
RModule restrict_to_submodule(const RModule& M, const Matrix& basis);

} // namespace stralg
