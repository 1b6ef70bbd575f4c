#include "stralg/gf.hpp"

#include <algorithm>
#include <sstream>

namespace stralg {

namespace {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

std::string Poly::str() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) os << ',';
        os << c[i];
    }
    os << ']';
    return os.str();
}

bool poly_is_monic(const Poly& f) { return !f.is_zero() && f.c.back() == 1; }

Poly poly_add(const Poly& a, const Poly& b, const FiniteField& F) {
    std::vector<Felt> r(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = F.add(a.coeff(i), b.coeff(i));
    return Poly(std::move(r));
}

Poly poly_sub(const Poly& a, const Poly& b, const FiniteField& F) {
    std::vector<Felt> r(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = F.sub(a.coeff(i), b.coeff(i));
    return Poly(std::move(r));
}

Poly poly_mul(const Poly& a, const Poly& b, const FiniteField& F) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Felt> r(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a.c[i], b.c[j]));
    }
    return Poly(std::move(r));
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& d, const FiniteField& F) {
    if (!poly_is_monic(d)) fail("NotMonic", "polynomial division needs a monic divisor");
    Poly rem = a;
    if (rem.degree() < d.degree()) return {Poly(), rem};
    std::vector<Felt> quo(rem.degree() - d.degree() + 1, 0);
    while (rem.degree() >= d.degree()) {
        int shift = rem.degree() - d.degree();
        Felt lead = rem.c.back();
        quo[shift] = lead;
        for (int i = 0; i <= d.degree(); ++i) {
            size_t k = static_cast<size_t>(i + shift);
            rem.c[k] = F.sub(rem.c[k], F.mul(lead, d.c[i]));
        }
        rem.trim();
    }
    return {Poly(std::move(quo)), rem};
}

Poly poly_mod(const Poly& a, const Poly& d, const FiniteField& F) {
    return poly_divmod(a, d, F).second;
}

Poly poly_pow(const Poly& f, unsigned n, const FiniteField& F) {
    Poly r(std::vector<Felt>{1});
    for (unsigned i = 0; i < n; ++i) r = poly_mul(r, f, F);
    return r;
}

Felt poly_eval(const Poly& f, Felt x, const FiniteField& F) {
    Felt acc = 0;
    for (size_t i = f.c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f.c[i]);
    return acc;
}

std::vector<Poly> monic_polys_of_degree(int d, const FiniteField& F) {
    std::vector<Poly> out;
    if (d < 0) return out;
    uint64_t q = F.order();
    uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    out.reserve(count);
    for (uint64_t code = 0; code < count; ++code) {
        std::vector<Felt> c(static_cast<size_t>(d) + 1, 0);
        uint64_t v = code;
        for (int i = 0; i < d; ++i) {
            c[static_cast<size_t>(i)] = static_cast<Felt>(v % q);
            v /= q;
        }
        c[static_cast<size_t>(d)] = 1;
        out.emplace_back(std::move(c));
    }
    return out;
}

bool poly_is_irreducible(const Poly& f, const FiniteField& F) {
    if (!poly_is_monic(f)) fail("NotMonic", "irreducibility test needs a monic polynomial");
    int n = f.degree();
    if (n < 1) fail("NotMonic", "irreducibility test needs degree >= 1");
    if (n == 1) return true;
    for (int d = 1; d <= n / 2; ++d)
        for (const Poly& g : monic_polys_of_degree(d, F))
            if (poly_mod(f, g, F).is_zero()) return false;
    return true;
}

FiniteField::FiniteField(uint32_t p, uint32_t k, Poly modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
    uint64_t q = 1;
    for (uint32_t i = 0; i < k; ++i) q *= p;
    q_ = static_cast<uint32_t>(q);
    if (q_ <= 256) {
        mul_table_.assign(static_cast<size_t>(q_) * q_, 0);
        for (uint32_t a = 0; a < q_; ++a)
            for (uint32_t b = 0; b < q_; ++b)
                mul_table_[a * q_ + b] = mul_slow(static_cast<Felt>(a), static_cast<Felt>(b));
    }
    inv_table_.assign(q_, 0);
    for (uint32_t a = 1; a < q_; ++a) {
        // a^(q-2) by square-and-multiply through mul_slow
        Felt acc = 1, base = static_cast<Felt>(a);
        uint64_t e = q_ - 2;
        while (e) {
            if (e & 1) acc = mul_slow(acc, base);
            base = mul_slow(base, base);
            e >>= 1;
        }
        inv_table_[a] = acc;
    }
}

Field FiniteField::make(uint32_t p, uint32_t k, std::optional<Poly> modulus) {
    if (!is_prime(p)) fail("NotPrime", std::to_string(p) + " is not prime");
    if (k < 1) fail("DegreeMismatch", "extension degree must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > 4096) fail("DegreeMismatch", "field order above the supported desk-scale bound 4096");
    }
    if (k == 1) {
        if (modulus && modulus->degree() != 1)
            fail("DegreeMismatch", "prime field takes no nontrivial modulus");
        return Field(new FiniteField(p, 1, Poly()));
    }
    Field prime = Field(new FiniteField(p, 1, Poly()));
    Poly m;
    if (modulus) {
        m = *modulus;
        if (m.degree() != static_cast<int>(k))
            fail("DegreeMismatch", "modulus degree " + std::to_string(m.degree()) +
                                      " != extension degree " + std::to_string(k));
        for (Felt c : m.c)
            if (c >= p) fail("DegreeMismatch", "modulus coefficient not reduced mod p");
        if (!poly_is_monic(m)) fail("NotMonic", "modulus must be monic");
        if (!poly_is_irreducible(m, *prime))
            fail("ReducibleModulus", "modulus " + m.str() + " factors over GF(" + std::to_string(p) + ")");
    } else {
        for (const Poly& cand : monic_polys_of_degree(static_cast<int>(k), *prime)) {
            if (poly_is_irreducible(cand, *prime)) {
                m = cand;
                break;
            }
        }
    }
    return Field(new FiniteField(p, k, std::move(m)));
}

Felt FiniteField::add(Felt a, Felt b) const {
    if (k_ == 1) {
        uint32_t s = static_cast<uint32_t>(a) + b;
        return static_cast<Felt>(s >= p_ ? s - p_ : s);
    }
    // digitwise mod-p addition
    Felt r = 0;
    uint32_t mul = 1;
    while (a || b) {
        uint32_t da = a % p_, db = b % p_;
        uint32_t s = da + db;
        if (s >= p_) s -= p_;
        r = static_cast<Felt>(r + s * mul);
        a = static_cast<Felt>(a / p_);
        b = static_cast<Felt>(b / p_);
        mul *= p_;
    }
    return r;
}

Felt FiniteField::neg(Felt a) const {
    if (k_ == 1) return static_cast<Felt>(a == 0 ? 0 : p_ - a);
    Felt r = 0;
    uint32_t mul = 1;
    while (a) {
        uint32_t da = a % p_;
        r = static_cast<Felt>(r + (da == 0 ? 0 : p_ - da) * mul);
        a = static_cast<Felt>(a / p_);
        mul *= p_;
    }
    return r;
}

Felt FiniteField::sub(Felt a, Felt b) const { return add(a, neg(b)); }

Felt FiniteField::mul_slow(Felt a, Felt b) const {
    if (k_ == 1) return static_cast<Felt>((static_cast<uint32_t>(a) * b) % p_);
    // multiply residue polynomials and reduce by the modulus
    std::vector<Felt> da, db;
    for (Felt x = a; x; x = static_cast<Felt>(x / p_)) da.push_back(static_cast<Felt>(x % p_));
    for (Felt x = b; x; x = static_cast<Felt>(x / p_)) db.push_back(static_cast<Felt>(x % p_));
    if (da.empty() || db.empty()) return 0;
    std::vector<uint32_t> prod(da.size() + db.size() - 1, 0);
    for (size_t i = 0; i < da.size(); ++i)
        for (size_t j = 0; j < db.size(); ++j)
            prod[i + j] = (prod[i + j] + static_cast<uint32_t>(da[i]) * db[j]) % p_;
    // reduction: x^k = -(m_{k-1} x^{k-1} + ... + m_0)
    for (size_t d = prod.size(); d-- > k_;) {
        uint32_t lead = prod[d];
        if (!lead) continue;
        prod[d] = 0;
        for (uint32_t i = 0; i < k_; ++i) {
            uint32_t m = modulus_.coeff(i);
            if (!m) continue;
            uint32_t& slot = prod[d - k_ + i];
            slot = (slot + p_ * p_ - lead * m % p_ * 1u) % p_;
        }
    }
    Felt r = 0;
    uint32_t mul = 1;
    for (uint32_t i = 0; i < k_; ++i) {
        r = static_cast<Felt>(r + (i < prod.size() ? prod[i] : 0) * mul);
        mul *= p_;
    }
    return r;
}

Felt FiniteField::mul(Felt a, Felt b) const {
    if (!mul_table_.empty()) return mul_table_[static_cast<size_t>(a) * q_ + b];
    return mul_slow(a, b);
}

Felt FiniteField::inv(Felt a) const {
    if (a == 0) fail("DegreeMismatch", "inverse of zero");
    return inv_table_[a];
}

Felt FiniteField::pow(Felt a, uint64_t e) const {
    Felt acc = 1, base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::string FiniteField::elem_str(Felt a) const { return std::to_string(a); }

Matrix Matrix::identity(Field F, size_t n) {
    Matrix m(std::move(F), n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool Matrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](Felt x) { return x == 0; });
}

Matrix Matrix::add(const Matrix& o) const {
    Matrix r(F_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->add(a_[i], o.a_[i]);
    return r;
}

Matrix Matrix::sub(const Matrix& o) const {
    Matrix r(F_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->sub(a_[i], o.a_[i]);
    return r;
}

Matrix Matrix::scaled(Felt c) const {
    Matrix r(F_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->mul(a_[i], c);
    return r;
}

Matrix Matrix::mul(const Matrix& o) const {
    Matrix r(F_, rows_, o.cols_);
    const bool prime = F_->prime_field();
    const uint32_t p = F_->characteristic();
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t k = 0; k < cols_; ++k) {
            Felt v = at(i, k);
            if (!v) continue;
            const Felt* src = o.row(k);
            Felt* dst = r.row(i);
            if (prime) {
                for (size_t j = 0; j < o.cols_; ++j)
                    dst[j] = static_cast<Felt>((dst[j] + static_cast<uint32_t>(v) * src[j]) % p);
            } else {
                for (size_t j = 0; j < o.cols_; ++j)
                    dst[j] = F_->add(dst[j], F_->mul(v, src[j]));
            }
        }
    }
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(F_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
    Matrix r(a.F_, a.rows_, a.cols_ + b.cols_);
    for (size_t i = 0; i < a.rows_; ++i) {
        std::copy(a.row(i), a.row(i) + a.cols_, r.row(i));
        std::copy(b.row(i), b.row(i) + b.cols_, r.row(i) + a.cols_);
    }
    return r;
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
    Matrix r(a.F_, a.rows_ + b.rows_, a.cols_);
    std::copy(a.a_.begin(), a.a_.end(), r.a_.begin());
    std::copy(b.a_.begin(), b.a_.end(), r.a_.begin() + static_cast<long>(a.a_.size()));
    return r;
}

Matrix Matrix::block_diag(const Matrix& a, const Matrix& b) {
    Matrix r(a.F_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        std::copy(a.row(i), a.row(i) + a.cols_, r.row(i));
    for (size_t i = 0; i < b.rows_; ++i)
        std::copy(b.row(i), b.row(i) + b.cols_, r.row(a.rows_ + i) + a.cols_);
    return r;
}

void Matrix::row_addmul(size_t dst, size_t src, Felt c, size_t from_col) {
    if (c == 0) return;
    Felt* d = row(dst);
    const Felt* s = row(src);
    if (F_->prime_field()) {
        const uint32_t p = F_->characteristic();
        const uint32_t cc = c;
        for (size_t j = from_col; j < cols_; ++j)
            d[j] = static_cast<Felt>((d[j] + cc * s[j]) % p);
    } else {
        const FiniteField& F = *F_;
        for (size_t j = from_col; j < cols_; ++j)
            if (s[j]) d[j] = F.add(d[j], F.mul(c, s[j]));
    }
}

void Matrix::row_scale(size_t i, Felt c, size_t from_col) {
    if (c == 1) return;
    Felt* d = row(i);
    for (size_t j = from_col; j < cols_; ++j)
        if (d[j]) d[j] = F_->mul(d[j], c);
}

Matrix Matrix::echelon(bool reduced, std::vector<size_t>* pivot_cols) const {
    Matrix m = *this;
    if (pivot_cols) pivot_cols->clear();
    size_t pr = 0;
    for (size_t pc = 0; pc < m.cols_ && pr < m.rows_; ++pc) {
        size_t piv = pr;
        while (piv < m.rows_ && m.at(piv, pc) == 0) ++piv;
        if (piv == m.rows_) continue;
        if (piv != pr)
            std::swap_ranges(m.row(piv), m.row(piv) + m.cols_, m.row(pr));
        m.row_scale(pr, m.F_->inv(m.at(pr, pc)), pc);
        for (size_t i = reduced ? 0 : pr + 1; i < m.rows_; ++i) {
            if (i == pr) continue;
            Felt v = m.at(i, pc);
            if (v) m.row_addmul(i, pr, m.F_->neg(v), pc);
        }
        if (pivot_cols) pivot_cols->push_back(pc);
        ++pr;
    }
    return m;
}

size_t Matrix::rank() const {
    std::vector<size_t> piv;
    echelon(false, &piv);
    return piv.size();
}

Matrix Matrix::kernel_basis() const {
    std::vector<size_t> piv;
    Matrix r = echelon(true, &piv);
    std::vector<bool> is_piv(cols_, false);
    for (size_t c : piv) is_piv[c] = true;
    size_t nfree = cols_ - piv.size();
    Matrix K(F_, cols_, nfree);
    size_t out = 0;
    for (size_t fc = 0; fc < cols_; ++fc) {
        if (is_piv[fc]) continue;
        K.at(fc, out) = 1;
        for (size_t pi = 0; pi < piv.size(); ++pi)
            K.at(piv[pi], out) = F_->neg(r.at(pi, fc));
        ++out;
    }
    return K;
}

Matrix Matrix::col_space_basis() const {
    std::vector<size_t> piv;
    Matrix r = transpose().echelon(true, &piv);
    Matrix b(F_, piv.size(), rows_);
    for (size_t i = 0; i < piv.size(); ++i)
        std::copy(r.row(i), r.row(i) + r.cols_, b.row(i));
    return b.transpose();
}

Matrix Matrix::row_slice(size_t first, size_t count) const {
    Matrix r(F_, count, cols_);
    for (size_t i = 0; i < count; ++i)
        std::copy(row(first + i), row(first + i) + cols_, r.row(i));
    return r;
}

Matrix Matrix::col_slice(size_t first, size_t count) const {
    Matrix r(F_, rows_, count);
    for (size_t i = 0; i < rows_; ++i)
        std::copy(row(i) + first, row(i) + first + count, r.row(i));
    return r;
}

std::optional<Matrix> Matrix::solve(const Matrix& B) const {
    // eliminate on [A | B]; a pivot landing in the B block means unsolvable
    Matrix aug = hcat(*this, B);
    std::vector<size_t> piv;
    Matrix r = aug.echelon(true, &piv);
    for (size_t c : piv)
        if (c >= cols_) return std::nullopt;
    Matrix X(F_, cols_, B.cols());
    for (size_t pi = 0; pi < piv.size(); ++pi)
        for (size_t j = 0; j < B.cols(); ++j)
            X.at(piv[pi], j) = r.at(pi, cols_ + j);
    return X;
}

namespace {

void require_same_ambient(const Matrix& U, const Matrix& V) {
    if (U.rows() != V.rows() || !U.field()->same(*V.field()))
        fail("AmbientMismatch", "subspaces live in different ambient spaces");
}

} // namespace

Matrix subspace_sum(const Matrix& U, const Matrix& V) {
    require_same_ambient(U, V);
    return Matrix::hcat(U, V).col_space_basis();
}

Matrix subspace_intersect(const Matrix& U, const Matrix& V) {
    require_same_ambient(U, V);
    // x with Uu = Vv: kernel of [U | -V]; intersection = U * (u-part)
    if (U.cols() == 0 || V.cols() == 0) return Matrix(U.field(), U.rows(), 0);
    Matrix K = Matrix::hcat(U, V.scaled(U.field()->neg(1))).kernel_basis();
    Matrix upart = K.row_slice(0, U.cols());
    return U.mul(upart).col_space_basis();
}

bool subspace_contains(const Matrix& U, const Matrix& V) {
    require_same_ambient(U, V);
    if (V.cols() == 0) return true;
    return Matrix::hcat(U, V).rank() == U.rank();
}

} // namespace stralg
