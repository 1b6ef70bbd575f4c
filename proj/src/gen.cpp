#include "stralg/gen.hpp"

#include <algorithm>

namespace stralg {

AlgebraElement random_element(const StringAlgebra& R, Rng& rng, int max_terms) {
    AlgebraElement e;
    long terms = rng.range(0, max_terms);
    for (long t = 0; t < terms; ++t) {
        int idx = static_cast<int>(rng.below(R.dim()));
        Felt c = static_cast<Felt>(1 + rng.below(R.field()->order() - 1));
        e = elem_add(e, R.elem_of_path(idx, c), R);
    }
    return e;
}

RMatrix random_rmatrix(Algebra R, Rng& rng, size_t rows, size_t cols, int max_terms) {
    RMatrix m(R, rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            if (rng.chance(1, 2)) m.at(i, j) = random_element(*R, rng, max_terms);
    return m;
}

StringWord random_string_word(const StringAlgebra& R, Rng& rng, size_t target_len) {
    const Quiver& Q = R.quiver();
    StringWord w;
    if (target_len == 0 || Q.arrows.empty()) {
        w.vertex = static_cast<int>(rng.below(Q.vertices.size()));
        return w;
    }
    // grow to the left: prepend letters, keeping the word a valid string
    Letter first;
    first.arrow = static_cast<int>(rng.below(Q.arrows.size()));
    first.inv = rng.chance(1, 2);
    w.letters.push_back(first);
    while (w.length() < target_len) {
        std::vector<Letter> options;
        for (size_t a = 0; a < Q.arrows.size(); ++a)
            for (bool inv : {false, true}) {
                Letter l{static_cast<int>(a), inv};
                StringWord cand;
                cand.letters.push_back(l);
                cand.letters.insert(cand.letters.end(), w.letters.begin(), w.letters.end());
                if (check_string(cand, R).ok) options.push_back(l);
            }
        if (options.empty()) break;
        Letter pick = options[rng.below(options.size())];
        w.letters.insert(w.letters.begin(), pick);
    }
    return w;
}

std::optional<BandData> random_band(const StringAlgebra& R, Rng& rng, int dim_cap) {
    const Quiver& Q = R.quiver();
    if (Q.arrows.empty() || dim_cap < 2) return std::nullopt;
    for (int attempt = 0; attempt < 64; ++attempt) {
        size_t len = 2 + rng.below(static_cast<uint64_t>(std::max(1, dim_cap / 2)));
        StringWord w = random_string_word(R, rng, len);
        if (w.trivial()) continue;
        bool cyclic = true;
        try {
            require_band_word(w, R);
        } catch (const Error&) {
            cyclic = false;
        }
        if (!cyclic) continue;
        int room = dim_cap / static_cast<int>(w.length());
        if (room < 1) continue;
        // enumerate (deg, power) pairs fitting the cap and pick one; degree
        // capped so the irreducible scan below stays desk scale
        std::vector<std::pair<int, int>> shapes;
        for (int deg = 1; deg <= std::min(room, 5); ++deg)
            for (int pw = 1; deg * pw <= room; ++pw) shapes.emplace_back(deg, pw);
        if (shapes.empty()) continue;
        auto [deg, pw] = shapes[rng.below(shapes.size())];
        std::vector<Poly> irr;
        for (const Poly& f : monic_polys_of_degree(deg, *R.field()))
            if (f.coeff(0) != 0 && poly_is_irreducible(f, *R.field())) irr.push_back(f);
        if (irr.empty()) continue;
        BandData B;
        B.word = w;
        B.f = irr[rng.below(irr.size())];
        B.power = pw;
        return B;
    }
    return std::nullopt;
}

RModule random_string_sum(Algebra R, Rng& rng, int dim_cap) {
    RModule M = RModule::zero(R);
    int budget = dim_cap;
    long parts = rng.range(1, 5);
    for (long i = 0; i < parts && budget > 0; ++i) {
        size_t len = rng.below(static_cast<uint64_t>(std::min(budget, 1 + dim_cap / 3)));
        StringWord w = random_string_word(*R, rng, len);
        int d = static_cast<int>(w.length()) + 1;
        if (d > budget) {
            w = StringWord{};
            w.vertex = static_cast<int>(rng.below(R->quiver().vertices.size()));
            d = 1;
        }
        M = RModule::direct_sum(M, RModule::string_module(w, R));
        budget -= d;
    }
    return M;
}

RModule random_module_mix(Algebra R, Rng& rng, int dim_cap) {
    RModule M = random_string_sum(R, rng, std::max(1, dim_cap / 2));
    int budget = dim_cap - M.dim();
    while (budget >= 2 && rng.chance(2, 3)) {
        auto B = random_band(*R, rng, budget);
        if (!B) break;
        RModule band = RModule::band_module(*B, R);
        M = RModule::direct_sum(M, band);
        budget -= band.dim();
    }
    return M;
}

} // namespace stralg
