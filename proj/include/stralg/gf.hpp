#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stralg/error.hpp"

namespace stralg {

// Field elements are encoded as integers in [0, p^k): an element's residue
// polynomial c0 + c1 t + ... has encoding c0 + c1 p + c2 p^2 + ...  For prime
// fields this is just the residue itself.
using Felt = uint16_t;

struct Poly;
class FiniteField;
using Field = std::shared_ptr<const FiniteField>;

// Dense polynomial over a finite field, low degree first, no trailing zeros.
// The zero polynomial has an empty coefficient vector and degree() == -1.
struct Poly {
    std::vector<Felt> c;

    Poly() = default;
    explicit Poly(std::vector<Felt> coeffs) : c(std::move(coeffs)) { trim(); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    Felt coeff(size_t i) const { return i < c.size() ? c[i] : 0; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator<(const Poly& o) const { return c < o.c; } // used for deterministic ordering
    std::string str() const;
};

bool poly_is_monic(const Poly& f);
Poly poly_add(const Poly& a, const Poly& b, const FiniteField& F);
Poly poly_sub(const Poly& a, const Poly& b, const FiniteField& F);
Poly poly_mul(const Poly& a, const Poly& b, const FiniteField& F);
// division by a monic divisor; returns (quotient, remainder)
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& d, const FiniteField& F);
Poly poly_mod(const Poly& a, const Poly& d, const FiniteField& F);
Poly poly_pow(const Poly& f, unsigned n, const FiniteField& F);
Felt poly_eval(const Poly& f, Felt x, const FiniteField& F);

// Exhaustive trial division over all monic factors of degree <= deg(f)/2.
// Deterministic; desk-scale degrees only.
bool poly_is_irreducible(const Poly& f, const FiniteField& F);

// Enumerates monic degree-d polynomials in increasing encoding order
// (c0 + c1 q + c2 q^2 + ... over the field's element encodings).
std::vector<Poly> monic_polys_of_degree(int d, const FiniteField& F);

// GF(p^k).  Immutable after construction; all element ops are pure.
class FiniteField {
public:
    // If k > 1 and no modulus is given, picks the irreducible monic degree-k
    // polynomial over GF(p) with the least coefficient encoding.
    static Field make(uint32_t p, uint32_t k, std::optional<Poly> modulus = std::nullopt);

    uint32_t characteristic() const { return p_; }
    uint32_t ext_degree() const { return k_; }
    uint32_t order() const { return q_; }
    bool prime_field() const { return k_ == 1; }
    const Poly& modulus() const { return modulus_; }

    Felt add(Felt a, Felt b) const;
    Felt sub(Felt a, Felt b) const;
    Felt neg(Felt a) const;
    Felt mul(Felt a, Felt b) const;
    Felt inv(Felt a) const;
    Felt pow(Felt a, uint64_t e) const;
    Felt from_int(uint64_t v) const { return static_cast<Felt>(v % q_); }

    std::string elem_str(Felt a) const; // decimal encoding

    bool same(const FiniteField& o) const {
        return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
    }

private:
    FiniteField(uint32_t p, uint32_t k, Poly modulus);

    uint32_t p_, k_, q_;
    Poly modulus_; // over GF(p); empty when k == 1
    std::vector<Felt> mul_table_, inv_table_; // built when q_ is small

    Felt mul_slow(Felt a, Felt b) const;
};

// Dense matrix over a finite field, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field F, size_t rows, size_t cols)
        : F_(std::move(F)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static Matrix identity(Field F, size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const Field& field() const { return F_; }

    Felt at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
    Felt& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Felt* row(size_t i) const { return a_.data() + i * cols_; }
    Felt* row(size_t i) { return a_.data() + i * cols_; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool is_zero() const;

    Matrix add(const Matrix& o) const;
    Matrix sub(const Matrix& o) const;
    Matrix scaled(Felt c) const;
    Matrix mul(const Matrix& o) const;
    Matrix transpose() const;

    static Matrix hcat(const Matrix& a, const Matrix& b);
    static Matrix vcat(const Matrix& a, const Matrix& b);
    static Matrix block_diag(const Matrix& a, const Matrix& b);

    // Gaussian elimination, first-nonzero-pivot with leftmost-column
    // tie-breaking.  reduced = true gives the RREF.
    Matrix echelon(bool reduced, std::vector<size_t>* pivot_cols = nullptr) const;
    size_t rank() const;
    // Columns form a kernel basis: (*this) * K == 0, cols(K) == cols - rank.
    Matrix kernel_basis() const;
    // Canonical basis of the column span (unique per subspace): RREF of the
    // transpose, zero rows dropped, transposed back.  Subspace equality is
    // then plain matrix equality.
    Matrix col_space_basis() const;
    // Rows [first, first+count) as a new matrix.
    Matrix row_slice(size_t first, size_t count) const;
    Matrix col_slice(size_t first, size_t count) const;

    // Solves (*this) * X = B columnwise; nullopt if any column is unsolvable.
    std::optional<Matrix> solve(const Matrix& B) const;

private:
    Field F_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<Felt> a_;

    void row_addmul(size_t dst, size_t src, Felt c, size_t from_col);
    void row_scale(size_t i, Felt c, size_t from_col);
};

// Canonical basis of U + V (column spans in the same ambient space).
Matrix subspace_sum(const Matrix& U, const Matrix& V);
// Canonical basis of the intersection of the column spans.
Matrix subspace_intersect(const Matrix& U, const Matrix& V);
// Does span(U) contain span(V)?
bool subspace_contains(const Matrix& U, const Matrix& V);

} // namespace stralg
