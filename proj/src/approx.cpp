#include "stralg/approx.hpp"

#include <algorithm>
#include <map>

namespace stralg {

int TileCatalog::index_of(const std::string& label) const {
    for (size_t i = 0; i < tiles.size(); ++i)
        if (tiles[i].label == label) return static_cast<int>(i);
    return -1;
}

std::vector<StringWord> enumerate_strings(const StringAlgebra& R, int max_len) {
    std::vector<StringWord> out;
    const Quiver& Q = R.quiver();
    for (size_t v = 0; v < Q.vertices.size(); ++v) {
        StringWord w;
        w.vertex = static_cast<int>(v);
        out.push_back(w);
    }
    // grow valid words letter by letter; keep canonical representatives only
    std::vector<StringWord> layer;
    for (size_t a = 0; a < Q.arrows.size(); ++a)
        for (bool inv : {false, true}) {
            StringWord w;
            w.letters.push_back(Letter{static_cast<int>(a), inv});
            layer.push_back(w);
        }
    for (int len = 1; len < max_len && !layer.empty(); ++len) {
        for (const StringWord& w : layer)
            if (canonical_word(w) == w) out.push_back(w);
        std::vector<StringWord> next;
        for (const StringWord& w : layer)
            for (size_t a = 0; a < Q.arrows.size(); ++a)
                for (bool inv : {false, true}) {
                    StringWord ext = w;
                    ext.letters.push_back(Letter{static_cast<int>(a), inv});
                    if (check_string(ext, R).ok) next.push_back(std::move(ext));
                }
        layer = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BandData> enumerate_bands(const StringAlgebra& R, int dim_cap) {
    std::vector<BandData> out;
    const Quiver& Q = R.quiver();
    if (Q.arrows.empty()) return out;
    const Field& K = R.field();

    std::vector<StringWord> layer;
    for (size_t a = 0; a < Q.arrows.size(); ++a)
        for (bool inv : {false, true})
            layer.push_back(StringWord{-1, {Letter{static_cast<int>(a), inv}}});
    for (int len = 1; len < dim_cap && !layer.empty(); ++len) {
        if (len >= 2) {
            for (const StringWord& w : layer) {
                if (!(canonical_band_rotation(w) == w)) continue;
                bool cyclic = true;
                try {
                    require_band_word(w, R);
                } catch (const Error&) {
                    cyclic = false;
                }
                if (!cyclic) continue;
                int room = (dim_cap - 1) / len; // dim V <= room
                for (int deg = 1; deg <= room; ++deg)
                    for (const Poly& f : monic_polys_of_degree(deg, *K)) {
                        if (f.coeff(0) == 0 || !poly_is_irreducible(f, *K)) continue;
                        for (int pw = 1; len * deg * pw < dim_cap; ++pw)
                            out.push_back(BandData{w, f, pw});
                    }
            }
        }
        std::vector<StringWord> next;
        for (const StringWord& w : layer)
            for (size_t a = 0; a < Q.arrows.size(); ++a)
                for (bool inv : {false, true}) {
                    StringWord ext = w;
                    ext.letters.push_back(Letter{static_cast<int>(a), inv});
                    if (check_string(ext, R).ok) next.push_back(std::move(ext));
                }
        layer = std::move(next);
    }
    return out;
}

TileCatalog build_tile_catalog(Algebra R, int max_string_len, int band_dim_cap,
                               size_t explosion_limit) {
    TileCatalog cat;
    cat.R = R;
    cat.max_string_len = max_string_len;
    cat.band_dim_cap = band_dim_cap;

    for (const StringWord& w : enumerate_strings(*R, max_string_len)) {
        Component c{canonical_word(w)};
        cat.tiles.push_back({component_label(c, *R), c, RModule::string_module(w, R)});
        if (cat.tiles.size() > explosion_limit)
            fail("ExplosionGuard", "catalog exceeds " + std::to_string(explosion_limit) + " tiles");
    }
    for (const BandData& b : enumerate_bands(*R, band_dim_cap)) {
        Component c{b};
        cat.tiles.push_back({component_label(c, *R), c, RModule::band_module(b, R)});
        if (cat.tiles.size() > explosion_limit)
            fail("ExplosionGuard", "catalog exceeds " + std::to_string(explosion_limit) + " tiles");
    }
    std::sort(cat.tiles.begin(), cat.tiles.end(), [](const auto& a, const auto& b) {
        if (a.mod.dim() != b.mod.dim()) return a.mod.dim() < b.mod.dim();
        return a.label < b.label;
    });
    // distinct canonical labels by construction; defend against duplicates anyway
    cat.tiles.erase(std::unique(cat.tiles.begin(), cat.tiles.end(),
                                [](const auto& a, const auto& b) { return a.label == b.label; }),
                    cat.tiles.end());
    return cat;
}

namespace {

std::map<std::string, long> label_multiset(const RModule& M) {
    if (!M.has_components())
        fail("UnsupportedRawModule", "a canonical component decomposition is required");
    std::map<std::string, long> out;
    for (const Component& c : M.components()) ++out[component_label(c, *M.algebra())];
    return out;
}


} // namespace

EpsTilesResult epsilon_tiles(const RModule& A, const RModule& M, const Rat& eps) {
    auto amult = label_multiset(A);
    auto mmult = label_multiset(M);
    EpsTilesResult res;
    if (A.dim() == 0 || M.dim() == 0) return res;

    long k = -1;
    for (const auto& [label, need] : amult) {
        long have = mmult.count(label) ? mmult[label] : 0;
        long fit = have / need;
        k = (k < 0) ? fit : std::min(k, fit);
    }
    if (k <= 0) {
        res.covered = 0;
        res.ok = Rat(0) >= 1 - eps; // only the degenerate eps >= 1 case
        return res;
    }
    res.k = k;
    res.covered = Rat(static_cast<long>(A.dim()) * k, M.dim());
    res.ok = res.covered >= 1 - eps;
    return res;
}

// --- epsilon isomorphism ----------------------------------------------------

namespace {

StringWord segment_word(const StringWord& w, const SegmentRef& seg) {
    StringWord s;
    if (seg.hi == seg.lo) {
        // single vertex: the trivial word at that vertex needs the quiver to
        // resolve, done by the caller; mark with vertex -2 placeholder
        s.vertex = -2;
        return s;
    }
    s.letters.assign(w.letters.begin() + static_cast<long>(seg.lo),
                     w.letters.begin() + static_cast<long>(seg.hi));
    return s;
}

// the trivial-word vertex of position i in word w
int vertex_at(const StringWord& w, size_t i, const Quiver& Q) {
    if (w.trivial()) return w.vertex;
    if (i == 0) return letter_dst(w.letters[0], Q);
    return letter_src(w.letters[i - 1], Q);
}

std::string segment_key(const StringGraph& G, const SegmentRef& seg) {
    const StringWord& w = G.components[seg.component];
    if (seg.hi == seg.lo)
        return "@" + std::to_string(vertex_at(w, seg.lo, G.R->quiver()));
    StringWord s = segment_word(w, seg);
    s = canonical_word(s);
    std::string key;
    for (const Letter& l : s.letters)
        key += std::to_string(l.arrow) + (l.inv ? "i" : "d") + ".";
    return key;
}

} // namespace

EpsIsoOutcome epsilon_isomorphism(const StringGraph& G1, const StringGraph& G2, const Rat& eps) {
    EpsIsoOutcome out;
    size_t v1 = G1.vertex_count(), v2 = G2.vertex_count();
    if (v1 == 0 || v2 == 0) {
        out.account = "empty graph";
        return out;
    }

    IsoCertificate cert;
    std::vector<bool> used1(G1.components.size(), false), used2(G2.components.size(), false);
    size_t covered1 = 0, covered2 = 0;

    // phase 1: exact matching of equal canonical components
    std::map<StringWord, std::vector<size_t>> pool;
    for (size_t j = 0; j < G2.components.size(); ++j) pool[G2.components[j]].push_back(j);
    for (size_t i = 0; i < G1.components.size(); ++i) {
        auto it = pool.find(G1.components[i]);
        if (it == pool.end() || it->second.empty()) continue;
        size_t j = it->second.back();
        it->second.pop_back();
        used1[i] = used2[j] = true;
        size_t n = G1.components[i].length();
        cert.matches.push_back({SegmentRef{i, 0, n}, SegmentRef{j, 0, n}});
        covered1 += n + 1;
        covered2 += n + 1;
    }

    // phase 2: cut the remainder into blocks at the hyperfiniteness scale
    // and match blocks with equal words
    long mb = tiling_block_length(eps);
    auto cut_blocks = [&](const StringGraph& G, const std::vector<bool>& used) {
        std::map<std::string, std::vector<SegmentRef>> blocks;
        for (size_t c = 0; c < G.components.size(); ++c) {
            if (used[c]) continue;
            size_t n = G.components[c].length();
            size_t pos = 0;
            while (pos + static_cast<size_t>(mb) <= n) {
                SegmentRef seg{c, pos, pos + static_cast<size_t>(mb)};
                blocks[segment_key(G, seg)].push_back(seg);
                pos += static_cast<size_t>(mb) + 1; // blocks stay vertex-disjoint
            }
        }
        return blocks;
    };
    auto blocks1 = cut_blocks(G1, used1);
    auto blocks2 = cut_blocks(G2, used2);
    for (auto& [key, segs1] : blocks1) {
        auto it = blocks2.find(key);
        if (it == blocks2.end()) continue;
        size_t pairs = std::min(segs1.size(), it->second.size());
        for (size_t p = 0; p < pairs; ++p) {
            cert.matches.push_back({segs1[p], it->second[p]});
            covered1 += segs1[p].vertices();
            covered2 += it->second[p].vertices();
        }
    }

    cert.eps_left = Rat(static_cast<long>(v1 - covered1), static_cast<long>(v1));
    cert.eps_right = Rat(static_cast<long>(v2 - covered2), static_cast<long>(v2));
    if (cert.eps_left <= eps && cert.eps_right <= eps) {
        out.certificate = std::move(cert);
    } else {
        out.account = "uncovered fractions " + rat_str(cert.eps_left) + " / " +
                      rat_str(cert.eps_right) + " exceed " + rat_str(eps);
    }
    return out;
}

StringGraph graph_of_module(const RModule& M) {
    if (!M.has_components())
        fail("UnsupportedRawModule", "no canonical decomposition available");
    std::vector<StringWord> words;
    for (const Component& c : M.components()) {
        if (c.is_band()) fail("UnsupportedRawModule", "band components have no string graph");
        words.push_back(*c.word());
    }
    return StringGraph::of_words(std::move(words), M.algebra());
}

EpsIsoOutcome epsilon_isomorphism_modules(const RModule& M, const RModule& N, const Rat& eps) {
    return epsilon_isomorphism(graph_of_module(M), graph_of_module(N), eps);
}

bool verify_certificate(const StringGraph& G1, const StringGraph& G2, const IsoCertificate& cert,
                        const Rat& eps, std::string* why) {
    auto explain = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    size_t covered1 = 0, covered2 = 0;
    std::map<size_t, std::vector<std::pair<size_t, size_t>>> used1, used2;
    for (const auto& [s1, s2] : cert.matches) {
        if (s1.component >= G1.components.size() || s2.component >= G2.components.size())
            return explain("segment references a missing component");
        if (s1.hi > G1.components[s1.component].length() ||
            s2.hi > G2.components[s2.component].length() || s1.lo > s1.hi || s2.lo > s2.hi)
            return explain("segment out of range");
        if (segment_key(G1, s1) != segment_key(G2, s2))
            return explain("matched segments decode to different words");
        if (s1.vertices() != s2.vertices()) return explain("matched segments differ in size");
        used1[s1.component].push_back({s1.lo, s1.hi});
        used2[s2.component].push_back({s2.lo, s2.hi});
        covered1 += s1.vertices();
        covered2 += s2.vertices();
    }
    for (auto* side : {&used1, &used2})
        for (auto& [comp, ivs] : *side) {
            std::sort(ivs.begin(), ivs.end());
            for (size_t i = 0; i + 1 < ivs.size(); ++i)
                if (ivs[i + 1].first <= ivs[i].second)
                    return explain("overlapping segments in component " + std::to_string(comp));
        }
    Rat e1(static_cast<long>(G1.vertex_count() - covered1), static_cast<long>(G1.vertex_count()));
    Rat e2(static_cast<long>(G2.vertex_count() - covered2), static_cast<long>(G2.vertex_count()));
    if (e1 > eps || e2 > eps) return explain("coverage below 1 - eps");
    return true;
}

BandApprox band_to_string_approx(const BandData& B, Algebra R, const Rat& kappa,
                                 long T_threshold) {
    require_band_word(B.word, *R);
    long n = static_cast<long>(B.word.length());
    long d = B.power * B.f.degree();
    long dimB = n * d;
    if (dimB < T_threshold)
        fail("TooSmall", "band dimension " + std::to_string(dimB) + " below the threshold " +
                             std::to_string(T_threshold));
    if (Rat(1, n) > kappa)
        fail("TooSmall", "slice loss 1/" + std::to_string(n) + " exceeds kappa " + rat_str(kappa));

    // delete slice V_1; slices 2..n carry the letters C_3..C_n untwisted
    StringWord T;
    if (n == 2) {
        T.vertex = letter_src(B.word.letters[1], R->quiver());
    } else {
        T.letters.assign(B.word.letters.begin() + 2, B.word.letters.end());
    }

    BandApprox out;
    out.deficit = Rat(d, dimB);
    RModule L = RModule::zero(R);
    for (long copy = 0; copy < d; ++copy) {
        out.words.push_back(T);
        L = RModule::direct_sum(L, RModule::string_module(T, R));
    }
    out.module = L;
    out.graph = StringGraph::of_words(out.words, R);

    // certificate over the unrolled grid: every component kept in full
    for (size_t c = 0; c < out.graph.components.size(); ++c) {
        size_t len = out.graph.components[c].length();
        out.cert.matches.push_back({SegmentRef{c, 0, len}, SegmentRef{c, 0, len}});
    }
    out.cert.eps_left = out.deficit;
    out.cert.eps_right = Rat(0);
    std::string why;
    if (!verify_certificate(out.graph, out.graph, out.cert, kappa, &why))
        fail("TooSmall", "unroll certificate failed verification: " + why);
    return out;
}

std::pair<std::vector<Component>, std::vector<Component>>
split_band_string(const std::vector<Component>& components, const StringAlgebra& R, long T) {
    std::vector<Component> small_bands, rest;
    for (const Component& c : components) {
        if (c.is_band() && component_dim(c, R) < T)
            small_bands.push_back(c);
        else
            rest.push_back(c);
    }
    return {small_bands, rest};
}

} // namespace stralg
