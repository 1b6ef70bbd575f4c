#include "stralg/rank.hpp"

#include <sstream>

#include "stralg/gen.hpp"

namespace stralg {

std::string TestSuite::signature() const {
    std::ostringstream os;
    os << "s" << s << "h" << h << "n" << mats.size();
    return os.str();
}

TestSuite make_test_suite(Algebra R, int s, int h, std::vector<RMatrix> extras) {
    TestSuite suite;
    suite.R = R;
    suite.s = s;
    suite.h = h;

    auto push = [&](RMatrix m, const std::string& name) {
        suite.mats.push_back(std::move(m));
        suite.names.push_back(name);
    };

    push(rmatrix_unit(R), "unit");
    const Quiver& Q = R->quiver();
    for (size_t v = 0; v < Q.vertices.size(); ++v) {
        RMatrix m(R, 1, 1);
        m.at(0, 0) = R->elem_of_path(R->trivial_index(static_cast<int>(v)));
        push(std::move(m), "e_" + Q.vertices[v]);
    }
    std::vector<int> nontrivial;
    for (size_t i = 0; i < R->path_basis().size(); ++i)
        if (!R->path_basis()[i].trivial()) nontrivial.push_back(static_cast<int>(i));
    int hmax = std::min<int>(h, static_cast<int>(R->field()->order()) - 1);
    for (int c = 1; c <= hmax; ++c)
        for (int idx : nontrivial) {
            RMatrix m(R, 1, 1);
            m.at(0, 0) = R->elem_of_path(idx, static_cast<Felt>(c));
            push(std::move(m), std::to_string(c) + "*" + R->path_str(R->path_basis()[static_cast<size_t>(idx)]));
        }
    for (int k = 2; k <= s; ++k) {
        if (!Q.arrows.empty()) {
            RMatrix ladder(R, static_cast<size_t>(k), static_cast<size_t>(k));
            for (int i = 0; i < k; ++i) ladder.at(static_cast<size_t>(i), static_cast<size_t>(i)) = R->unit();
            for (int i = 0; i + 1 < k; ++i) {
                Path p;
                p.arrows.push_back(static_cast<int>(static_cast<size_t>(i) % Q.arrows.size()));
                ladder.at(static_cast<size_t>(i) + 1, static_cast<size_t>(i)) =
                    R->elem_of_path(R->basis_index(p));
            }
            push(std::move(ladder), "ladder" + std::to_string(k));
        }
        if (!nontrivial.empty()) {
            RMatrix diag(R, static_cast<size_t>(k), static_cast<size_t>(k));
            for (int i = 0; i < k; ++i)
                diag.at(static_cast<size_t>(i), static_cast<size_t>(i)) = R->elem_of_path(
                    nontrivial[static_cast<size_t>(i) % nontrivial.size()]);
            push(std::move(diag), "pathdiag" + std::to_string(k));
        }
        // arrow stacks tell sources from sinks (they see joint kernels and
        // joint images, where the diagonal probes only see each arrow alone)
        if (!Q.arrows.empty()) {
            RMatrix col(R, static_cast<size_t>(k), 1);
            RMatrix row(R, 1, static_cast<size_t>(k));
            for (int i = 0; i < k; ++i) {
                Path p;
                p.arrows.push_back(static_cast<int>(static_cast<size_t>(i) % Q.arrows.size()));
                col.at(static_cast<size_t>(i), 0) = R->elem_of_path(R->basis_index(p));
                row.at(0, static_cast<size_t>(i)) = R->elem_of_path(R->basis_index(p));
            }
            push(std::move(col), "arrowcol" + std::to_string(k));
            push(std::move(row), "arrowrow" + std::to_string(k));
        }
    }
    for (size_t i = 0; i < extras.size(); ++i)
        push(extras[i], "extra" + std::to_string(i));
    return suite;
}

Matrix blow_up(const RModule& M, const RMatrix& A) {
    if (!M.algebra()->same(*A.R)) fail("AlgebraMismatch", "matrix over a different algebra");
    size_t d = static_cast<size_t>(M.dim());
    Matrix big(M.algebra()->field(), A.rows * d, A.cols * d);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j) {
            const AlgebraElement& e = A.at(i, j);
            if (e.is_zero()) continue;
            Matrix block = M.element_action(e);
            for (size_t r = 0; r < d; ++r)
                for (size_t c = 0; c < d; ++c)
                    if (Felt v = block.at(r, c); v != 0) big.at(i * d + r, j * d + c) = v;
        }
    return big;
}

Rat rk(const RModule& M, const RMatrix& A) {
    if (M.dim() < 1) fail("AlgebraMismatch", "rank of a matrix over the zero module");
    return Rat(static_cast<long>(blow_up(M, A).rank()), M.dim());
}

RankProfile profile(const RModule& M, const TestSuite& suite) {
    RankProfile p;
    p.suite_sig = suite.signature();
    p.values.reserve(suite.mats.size());
    for (const RMatrix& A : suite.mats) p.values.push_back(rk(M, A));
    return p;
}

Rat profile_distance(const RankProfile& p, const RankProfile& q) {
    if (p.suite_sig != q.suite_sig || p.values.size() != q.values.size())
        fail("SuiteMismatch", "profiles were taken against different suites");
    Rat dist = 0;
    Rat w(1, 2);
    for (size_t i = 0; i < p.values.size(); ++i) {
        dist += w * rat_abs(p.values[i] - q.values[i]);
        w /= 2;
    }
    return dist;
}

AuditReport sylvester_audit(const RModule& M, long trials, uint64_t seed, int max_size,
                            int max_terms) {
    AuditReport rep;
    rep.trials = trials;
    Rng rng(seed);
    Algebra R = M.algebra();

    // axiom: rk(1) = 1
    if (rk(M, rmatrix_unit(R)) != 1) {
        rep.ok = false;
        rep.violations.push_back("rk(unit) != 1");
    }

    for (long t = 0; t < trials; ++t) {
        size_t k = 1 + rng.below(static_cast<uint64_t>(max_size));
        size_t l = 1 + rng.below(static_cast<uint64_t>(max_size));
        size_t m = 1 + rng.below(static_cast<uint64_t>(max_size));
        size_t n = 1 + rng.below(static_cast<uint64_t>(max_size));
        RMatrix A = random_rmatrix(R, rng, k, l, max_terms);
        RMatrix B = random_rmatrix(R, rng, m, n, max_terms);
        RMatrix C = random_rmatrix(R, rng, m, l, max_terms);
        RMatrix AB = random_rmatrix(R, rng, l, n, max_terms); // composable with A

        Rat ra = rk(M, A), rb = rk(M, B);
        if (rk(M, rmatrix_block_diag(A, B)) != ra + rb) {
            rep.ok = false;
            rep.violations.push_back("block additivity failed at trial " + std::to_string(t));
        }
        if (rk(M, rmatrix_lower_block(A, B, C)) < ra + rb) {
            rep.ok = false;
            rep.violations.push_back("lower-triangular superadditivity failed at trial " +
                                     std::to_string(t));
        }
        Rat rab = rk(M, rmatrix_mul(A, AB));
        if (rab > ra || rab > rk(M, AB)) {
            rep.ok = false;
            rep.violations.push_back("submultiplicativity failed at trial " + std::to_string(t));
        }
    }
    return rep;
}

AuditReport weight_identity_check(const std::vector<std::pair<RModule, int>>& components,
                                  const TestSuite& suite) {
    AuditReport rep;
    if (components.empty()) fail("AlgebraMismatch", "weight identity needs components");
    RModule M = RModule::zero(components.front().first.algebra());
    long total = 0;
    for (const auto& [Q, mult] : components) {
        M = RModule::direct_sum(M, RModule::power(Q, mult));
        total += static_cast<long>(Q.dim()) * mult;
    }
    for (size_t i = 0; i < suite.mats.size(); ++i) {
        Rat lhs = rk(M, suite.mats[i]);
        Rat rhs = 0;
        for (const auto& [Q, mult] : components) {
            Rat w(static_cast<long>(Q.dim()) * mult, total);
            rhs += w * rk(Q, suite.mats[i]);
        }
        ++rep.trials;
        if (lhs != rhs) {
            rep.ok = false;
            rep.violations.push_back("weight identity failed on " + suite.names[i]);
        }
    }
    return rep;
}

TrimReport trim_bound_check(const RModule& M, const Matrix& submodule_basis,
                            const TestSuite& suite) {
    TrimReport rep;
    RModule N = restrict_to_submodule(M, submodule_basis); // throws NotSubmodule
    if (N.dim() < 1) fail("NotSubmodule", "trim bound needs a nonzero submodule");
    rep.eps = Rat(M.dim() - N.dim(), M.dim());
    for (size_t i = 0; i < suite.mats.size(); ++i) {
        Rat gap = rat_abs(rk(M, suite.mats[i]) - rk(N, suite.mats[i]));
        Rat bound = 2 * rep.eps * Rat(static_cast<long>(suite.mats[i].cols));
        if (gap > bound) {
            rep.ok = false;
            rep.violations.push_back("trim bound failed on " + suite.names[i] + ": gap " +
                                     rat_str(gap) + " > " + rat_str(bound));
        }
    }
    return rep;
}

} // namespace stralg
