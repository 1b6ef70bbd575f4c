#include "stralg/params.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "stralg/gen.hpp"

namespace stralg {

long gen_number(const RModule& M) {
    if (M.dim() == 0) return 0;
    Matrix J = radical_submodule(M);
    long best = 0;
    for (size_t v = 0; v < M.algebra()->quiver().vertices.size(); ++v) {
        long block = std::count(M.vertex_of_basis().begin(), M.vertex_of_basis().end(),
                                static_cast<int>(v));
        long rad_block = static_cast<long>(M.vertex_projector(static_cast<int>(v)).mul(J).rank());
        best = std::max(best, block - rad_block);
    }
    return best;
}

Rat gen_number_normalized(const RModule& M) {
    if (M.dim() == 0) return 0;
    return Rat(gen_number(M), M.dim());
}

namespace {

// all q^d coordinate vectors of length d, excluding zero, in encoding order
std::vector<std::vector<Felt>> all_vectors(const Field& K, int d) {
    uint64_t q = K->order();
    uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    std::vector<std::vector<Felt>> out;
    for (uint64_t code = 1; code < count; ++code) {
        std::vector<Felt> v(static_cast<size_t>(d));
        uint64_t x = code;
        for (int i = 0; i < d; ++i) {
            v[static_cast<size_t>(i)] = static_cast<Felt>(x % q);
            x /= q;
        }
        out.push_back(std::move(v));
    }
    return out;
}

Matrix column_of(const Field& K, const std::vector<Felt>& v) {
    Matrix m(K, v.size(), 1);
    for (size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
}

// smallest submodule containing span(B): close under all arrow actions
Matrix module_closure(const RModule& M, Matrix B) {
    B = B.col_space_basis();
    while (true) {
        Matrix grown = B;
        for (size_t a = 0; a < M.algebra()->quiver().arrows.size(); ++a)
            grown = Matrix::hcat(grown, M.action(static_cast<int>(a)).mul(B));
        // vertex projections keep the span graded
        for (size_t v = 0; v < M.algebra()->quiver().vertices.size(); ++v)
            grown = Matrix::hcat(grown, M.vertex_projector(static_cast<int>(v)).mul(B));
        grown = grown.col_space_basis();
        if (grown.cols() == B.cols()) return grown;
        B = grown;
    }
}

std::string matrix_key(const Matrix& m) {
    std::string key = std::to_string(m.cols()) + ":";
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) key += static_cast<char>('0' + m.at(i, j) % 64);
    return key;
}

} // namespace

long gen_number_bruteforce(const RModule& M, int dim_cap) {
    if (M.dim() == 0) return 0;
    if (M.dim() > dim_cap) fail("BudgetExceeded", "brute force generator search over the cap");
    const Field& K = M.algebra()->field();
    uint64_t q = K->order();
    double cells = static_cast<double>(M.dim()) * static_cast<double>(q);
    if (cells > 1e6) fail("BudgetExceeded", "field too large for the brute force search");

    auto candidates = all_vectors(K, M.dim());
    std::map<std::string, long> memo;

    // shortest number of element adjunctions from span(U) to all of M
    std::function<long(const Matrix&)> shortest = [&](const Matrix& U) -> long {
        if (static_cast<int>(U.cols()) == M.dim()) return 0;
        auto it = memo.find(matrix_key(U));
        if (it != memo.end()) return it->second;
        memo[matrix_key(U)] = M.dim() + 1; // cycle guard; real value below
        long best = M.dim() + 1;
        for (const auto& v : candidates) {
            Matrix col = column_of(K, v);
            if (subspace_contains(U, col)) continue;
            Matrix next = module_closure(M, Matrix::hcat(U, col));
            best = std::min(best, 1 + shortest(next));
            if (best == 1) break;
        }
        memo[matrix_key(U)] = best;
        return best;
    };
    return shortest(Matrix(K, static_cast<size_t>(M.dim()), 0));
}

namespace {

// the K-matrix of (r_1..r_k) -> sum r_i m_i as a map R^k -> M
Matrix multiplication_map(const RModule& M, const std::vector<std::vector<Felt>>& tuple) {
    const Field& K = M.algebra()->field();
    size_t dr = M.algebra()->dim();
    Matrix map(K, static_cast<size_t>(M.dim()), tuple.size() * dr);
    for (size_t i = 0; i < tuple.size(); ++i) {
        Matrix m = column_of(K, tuple[i]);
        for (size_t b = 0; b < dr; ++b) {
            Matrix img = M.path_action(M.algebra()->path_basis()[b]).mul(m);
            for (size_t r = 0; r < img.rows(); ++r) map.at(r, i * dr + b) = img.at(r, 0);
        }
    }
    return map;
}

bool tuple_independent(const RModule& M, const std::vector<std::vector<Felt>>& tuple) {
    Matrix map = multiplication_map(M, tuple);
    return map.rank() == map.cols();
}

} // namespace

IndepResult indep_number(const RModule& M, bool exact, uint64_t budget, uint64_t seed) {
    IndepResult res;
    size_t dr = M.algebra()->dim();
    res.upper = M.dim() / static_cast<long>(dr);
    if (res.upper == 0) {
        res.exact = true;
        return res;
    }
    const Field& K = M.algebra()->field();

    if (exact) {
        uint64_t q = K->order();
        double space = 1;
        for (int i = 0; i < M.dim(); ++i) space *= static_cast<double>(q);
        if (space > 1e7) fail("BudgetExceeded", "exact independence search over the cap");
        auto candidates = all_vectors(K, M.dim());
        uint64_t nodes = 0;

        // depth-first search over index-increasing tuples; every prefix of
        // an independent tuple is independent, so pruning is complete
        std::vector<std::vector<Felt>> current;
        std::vector<size_t> stack_idx;
        std::function<void(size_t)> dfs = [&](size_t from) {
            if (static_cast<long>(current.size()) > res.lower) {
                res.lower = static_cast<long>(current.size());
                res.witness = current;
            }
            if (static_cast<long>(current.size()) == res.upper) return;
            for (size_t i = from; i < candidates.size(); ++i) {
                if (++nodes > budget) fail("BudgetExceeded", "independence search budget exhausted");
                current.push_back(candidates[i]);
                if (tuple_independent(M, current))
                    dfs(i + 1);
                current.pop_back();
                if (static_cast<long>(res.lower) == res.upper) return;
            }
        };
        dfs(0);
        res.exact = true;
        return res;
    }

    // randomized greedy growth, repeated; certified lower bound via witness
    Rng rng(seed);
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<std::vector<Felt>> current;
        for (uint64_t step = 0; step < budget / 64 + 8; ++step) {
            if (static_cast<long>(current.size()) == res.upper) break;
            std::vector<Felt> v(static_cast<size_t>(M.dim()));
            for (auto& x : v) x = static_cast<Felt>(rng.below(K->order()));
            current.push_back(std::move(v));
            if (!tuple_independent(M, current)) current.pop_back();
        }
        if (static_cast<long>(current.size()) > res.lower) {
            res.lower = static_cast<long>(current.size());
            res.witness = current;
        }
        if (res.lower == res.upper) break;
    }
    return res;
}

Rat weight_of(const RModule& M, const std::string& tile_label) {
    if (!M.has_components()) fail("UnknownDecomposition", "weight needs the component multiset");
    long num = 0;
    for (const Component& c : M.components())
        if (component_label(c, *M.algebra()) == tile_label) num += component_dim(c, *M.algebra());
    return Rat(num, M.dim());
}

Rat hom_param_L(const RModule& Q, const RModule& M) {
    return Rat(static_cast<long>(hom_space(Q, M).dim), M.dim());
}

Rat hom_param_R(const RModule& Q, const RModule& M) {
    return Rat(static_cast<long>(hom_space(M, Q).dim), M.dim());
}

std::string ParameterId::name() const {
    switch (kind) {
        case Kind::G: return "g";
        case Kind::I: return "i";
        case Kind::Weight: return "weight(" + q_label + ")";
        case Kind::HomL: return "homL(" + q_label + ")";
        case Kind::HomR: return "homR(" + q_label + ")";
        case Kind::RankA: return "rank";
    }
    return "?";
}

Rat eval_parameter(const ParameterId& p, const RModule& M) {
    switch (p.kind) {
        case ParameterId::Kind::G: return gen_number_normalized(M);
        case ParameterId::Kind::I: {
            IndepResult r = indep_number(M, M.dim() <= 10);
            return Rat(r.lower, M.dim());
        }
        case ParameterId::Kind::Weight: return weight_of(M, p.q_label);
        case ParameterId::Kind::HomL: return hom_param_L(*p.q, M);
        case ParameterId::Kind::HomR: return hom_param_R(*p.q, M);
        case ParameterId::Kind::RankA: return rk(M, *p.A);
    }
    fail("AlgebraMismatch", "unknown parameter kind");
}

Matrix largest_submodule_inside(const RModule& M, const Matrix& subspace) {
    Matrix N = subspace.col_space_basis();
    while (true) {
        if (N.cols() == 0) return N;
        // annihilator rows of span(N): z with z^T N = 0
        Matrix ann = N.transpose().kernel_basis(); // ambient x (ambient - dim N)
        Matrix cut = ann.transpose();              // rows vanish exactly on span(N)
        Matrix next = N;
        for (size_t a = 0; a < M.algebra()->quiver().arrows.size(); ++a) {
            // keep v in span(next) with action(a) v still inside span(N)
            Matrix test = cut.mul(M.action(static_cast<int>(a)).mul(next));
            Matrix keep = test.kernel_basis();
            next = next.mul(keep).col_space_basis();
        }
        for (size_t v = 0; v < M.algebra()->quiver().vertices.size(); ++v) {
            Matrix test = cut.mul(M.vertex_projector(static_cast<int>(v)).mul(next));
            Matrix keep = test.kernel_basis();
            next = next.mul(keep).col_space_basis();
        }
        if (next.cols() == N.cols()) return N;
        N = next;
    }
}

StabilityReport stability_probe(const ParameterId& p, const RModule& M, const Rat& delta,
                                long trials, uint64_t seed, int max_power) {
    StabilityReport rep;
    rep.max_deviation = 0;
    Rng rng(seed);
    const Field& K = M.algebra()->field();
    bool trims_supported = p.kind != ParameterId::Kind::Weight;
    Rat pM = eval_parameter(p, M);

    if (trims_supported) {
        long keep = rat_ceil_long((1 - delta) * M.dim());
        for (long t = 0; t < trials; ++t) {
            // random coordinate subspace of the target size, then the largest
            // submodule inside it
            std::vector<size_t> idx(static_cast<size_t>(M.dim()));
            for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            for (size_t i = idx.size(); i > 1; --i)
                std::swap(idx[i - 1], idx[rng.below(i)]);
            Matrix U(K, static_cast<size_t>(M.dim()), static_cast<size_t>(keep));
            for (long c = 0; c < keep; ++c) U.at(idx[static_cast<size_t>(c)], static_cast<size_t>(c)) = 1;
            Matrix Nbasis = largest_submodule_inside(M, U);
            if (Nbasis.cols() == 0) continue;
            RModule N = restrict_to_submodule(M, Nbasis);
            Rat pN = eval_parameter(p, N);
            Rat dev = rat_abs(pM - pN);
            rep.trims.push_back({Rat(M.dim() - N.dim(), M.dim()), dev});
            rep.max_deviation = std::max(rep.max_deviation, dev);
        }
    }

    for (int k = 1; k <= max_power; ++k)
        rep.power_trajectory.push_back(eval_parameter(p, RModule::power(M, k)));
    return rep;
}

Tester build_tester(const ParameterId& p, Algebra R, const TesterConfig& config) {
    Tester T;
    T.p = p;
    T.suite = make_test_suite(R, config.suite_s, config.suite_h);
    T.catalog = build_tile_catalog(R, config.max_string_len, config.band_dim_cap,
                                   config.explosion_limit);
    T.kappa = config.kappa;
    T.delta = config.kappa / 2;

    // stabilization power: smallest n with |p(Q^{2n}) - p(Q^n)| within the
    // probe tolerance for every tile
    int n = 1;
    for (; n < config.stab_power_cap; ++n) {
        bool stable = true;
        for (const auto& tile : T.catalog.tiles) {
            Rat a = eval_parameter(p, RModule::power(tile.mod, n));
            Rat b = eval_parameter(p, RModule::power(tile.mod, 2 * n));
            if (rat_abs(a - b) > config.stab_tol) {
                stable = false;
                break;
            }
        }
        if (stable) break;
    }
    T.stab_power = n;

    for (const auto& tile : T.catalog.tiles) {
        std::vector<Rat> prof;
        for (const RMatrix& A : T.suite.mats) prof.push_back(rk(tile.mod, A));
        T.tile_profiles.push_back(std::move(prof));
        T.p_values.push_back(eval_parameter(p, RModule::power(tile.mod, T.stab_power)));
    }
    return T;
}

TestOutcome run_tester(const Tester& T, const std::vector<Rat>& rank_estimates) {
    if (rank_estimates.size() != T.suite.mats.size())
        fail("SuiteMismatch", "estimates do not match the tester's suite");
    TestOutcome out;
    bool have = false;
    Rat best_radius;
    for (size_t j = 0; j < T.catalog.tiles.size(); ++j) {
        Rat radius = 0;
        for (size_t i = 0; i < rank_estimates.size(); ++i)
            radius = std::max(radius, rat_abs(T.tile_profiles[j][i] - rank_estimates[i]));
        if (!have || radius < best_radius) {
            have = true;
            best_radius = radius;
            out.tile = static_cast<int>(j);
        }
    }
    if (!have) {
        out.flag = "NoTileWithinKappa";
        return out;
    }
    out.radius = best_radius;
    out.value = T.p_values[static_cast<size_t>(out.tile)];
    if (best_radius > T.kappa) {
        out.ok = false;
        out.flag = "NoTileWithinKappa";
    } else {
        out.ok = true;
    }
    return out;
}

} // namespace stralg
