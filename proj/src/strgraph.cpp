#include "stralg/strgraph.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace stralg {

StringGraph StringGraph::of_words(std::vector<StringWord> words, Algebra R) {
    StringGraph G;
    G.R = R;
    for (auto& w : words) {
        require_string(w, *R);
        G.components.push_back(canonical_word(w));
    }
    std::sort(G.components.begin(), G.components.end());
    return G;
}

size_t StringGraph::vertex_count() const {
    size_t n = 0;
    for (const auto& w : components) n += w.length() + 1;
    return n;
}

RModule StringGraph::to_module() const {
    RModule M = RModule::zero(R);
    for (const auto& w : components) M = RModule::direct_sum(M, RModule::string_module(w, R));
    return M;
}

BallType BallType::canonical() const {
    BallType refl;
    refl.left = right;
    refl.right = left;
    refl.letters.resize(letters.size());
    std::transform(letters.rbegin(), letters.rend(), refl.letters.begin(),
                   [](const Letter& l) { return l.inverse(); });
    return refl < *this ? refl : *this;
}

std::string BallType::str(const StringAlgebra& R) const {
    std::string s = "L" + std::to_string(left) + "R" + std::to_string(right) + ":";
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i) s += ' ';
        s += R.quiver().arrows[static_cast<size_t>(letters[i].arrow)].label;
        if (letters[i].inv) s += "^-1";
    }
    return s;
}

BallType ball_type_at(const StringWord& word, size_t vertex_index, int radius) {
    size_t n = word.length();
    size_t lo = vertex_index > static_cast<size_t>(radius) ? vertex_index - static_cast<size_t>(radius) : 0;
    size_t hi = std::min(n, vertex_index + static_cast<size_t>(radius));
    BallType b;
    b.left = static_cast<int>(vertex_index - lo);
    b.right = static_cast<int>(hi - vertex_index);
    b.letters.assign(word.letters.begin() + static_cast<long>(lo),
                     word.letters.begin() + static_cast<long>(hi));
    return b.canonical();
}

StatProfile ball_stats(const StringGraph& G, int radius, int jobs) {
    if (G.components.empty()) fail("EmptyGraph", "ball statistics of an empty graph");
    size_t total = G.vertex_count();

    auto census_range = [&](size_t comp_lo, size_t comp_hi, std::map<BallType, long>& counts) {
        for (size_t c = comp_lo; c < comp_hi; ++c) {
            const StringWord& w = G.components[c];
            for (size_t v = 0; v <= w.length(); ++v) ++counts[ball_type_at(w, v, radius)];
        }
    };

    std::map<BallType, long> counts;
    if (jobs <= 1 || G.components.size() < 2) {
        census_range(0, G.components.size(), counts);
    } else {
        size_t workers = std::min<size_t>(static_cast<size_t>(jobs), G.components.size());
        std::vector<std::map<BallType, long>> parts(workers);
        std::vector<std::thread> threads;
        size_t chunk = (G.components.size() + workers - 1) / workers;
        for (size_t t = 0; t < workers; ++t) {
            size_t lo = t * chunk, hi = std::min(G.components.size(), lo + chunk);
            threads.emplace_back(census_range, lo, hi, std::ref(parts[t]));
        }
        for (auto& th : threads) th.join();
        for (const auto& part : parts)
            for (const auto& [k, v] : part) counts[k] += v; // merge order fixed by map keys
    }

    StatProfile p;
    p.radius = radius;
    p.observed = static_cast<long>(total);
    for (const auto& [k, v] : counts) p.freq[k] = Rat(v, static_cast<long>(total));
    return p;
}

double hoeffding_epsilon(double delta, long samples) {
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(samples)));
}

SampledStats ball_stats_sampled(const StringGraph& G, int radius, long samples, uint64_t seed,
                                double confidence_delta) {
    if (G.components.empty()) fail("EmptyGraph", "sampling an empty graph");
    if (samples < 1) fail("BudgetExceeded", "need at least one sample");
    size_t total = G.vertex_count();

    // a budget covering the whole graph switches to the exhaustive census
    if (static_cast<size_t>(samples) >= total) {
        SampledStats out;
        out.profile = ball_stats(G, radius);
        out.samples = samples;
        out.confidence_delta = confidence_delta;
        out.hoeffding_eps = hoeffding_epsilon(confidence_delta, samples);
        return out;
    }

    // global vertex index -> (component, offset), via prefix sums
    std::vector<size_t> first(G.components.size() + 1, 0);
    for (size_t c = 0; c < G.components.size(); ++c)
        first[c + 1] = first[c] + G.components[c].length() + 1;

    Rng rng(seed);
    std::map<BallType, long> counts;
    for (long i = 0; i < samples; ++i) {
        size_t v = static_cast<size_t>(rng.below(total));
        size_t c = static_cast<size_t>(std::upper_bound(first.begin(), first.end(), v) -
                                       first.begin()) - 1;
        ++counts[ball_type_at(G.components[c], v - first[c], radius)];
    }

    SampledStats out;
    out.profile.radius = radius;
    out.profile.observed = samples;
    for (const auto& [k, v] : counts) out.profile.freq[k] = Rat(v, samples);
    out.samples = samples;
    out.confidence_delta = confidence_delta;
    out.hoeffding_eps = hoeffding_epsilon(confidence_delta, samples);
    return out;
}

Rat profile_distance_bs(const StatProfile& p, const StatProfile& q) {
    if (p.radius != q.radius) fail("RadiusMismatch", "profiles of different radii");
    Rat acc = 0;
    auto it = p.freq.begin();
    auto jt = q.freq.begin();
    while (it != p.freq.end() || jt != q.freq.end()) {
        if (jt == q.freq.end() || (it != p.freq.end() && it->first < jt->first)) {
            acc += it->second;
            ++it;
        } else if (it == p.freq.end() || jt->first < it->first) {
            acc += jt->second;
            ++jt;
        } else {
            acc += rat_abs(it->second - jt->second);
            ++it;
            ++jt;
        }
    }
    return acc / 2;
}

EndpointCount right_endpoint_count(const StringWord& S, const StringGraph& G) {
    if (S.trivial()) fail("InvalidString", "endpoint counting needs length >= 1");
    size_t k = S.length();
    EndpointCount out;
    StringWord Sinv = S.inverse();

    auto match_at = [](const std::vector<Letter>& hay, size_t pos, const std::vector<Letter>& pat) {
        return std::equal(pat.begin(), pat.end(), hay.begin() + static_cast<long>(pos));
    };

    for (const StringWord& w : G.components) {
        if (w.length() < k) continue;
        std::vector<bool> hit(w.length() + 1, false);
        for (size_t pos = 0; pos + k <= w.length(); ++pos) {
            // forward copy at letters [pos, pos+k): right endvertex pos+k
            if (match_at(w.letters, pos, S.letters)) hit[pos + k] = true;
            // backward copy: the segment spells S^{-1}, right endvertex pos
            if (match_at(w.letters, pos, Sinv.letters)) hit[pos] = true;
        }
        out.count += std::count(hit.begin(), hit.end(), true);
    }
    out.density = Rat(out.count, static_cast<long>(G.vertex_count()));
    return out;
}

ConvergenceReport stringconvergence_check(const std::vector<StringGraph>& graphs,
                                          const std::vector<StringWord>& words, int radius) {
    if (graphs.empty()) fail("EmptyGraph", "convergence check needs graphs");
    ConvergenceReport rep;
    for (const StringWord& S : words) {
        rep.word_names.push_back("|S|=" + std::to_string(S.length()));
        std::vector<Rat> traj;
        for (const StringGraph& G : graphs) traj.push_back(right_endpoint_count(S, G).density);
        rep.r_trajectories.push_back(std::move(traj));
    }
    std::vector<StatProfile> profiles;
    for (const StringGraph& G : graphs) profiles.push_back(ball_stats(G, radius));
    for (size_t i = 0; i + 1 < profiles.size(); ++i)
        rep.bs_steps.push_back(profile_distance_bs(profiles[i], profiles[i + 1]));
    for (size_t j = 0; j < profiles.size(); ++j) {
        Rat worst = 0;
        for (size_t m = j; m < profiles.size(); ++m)
            for (size_t n = m + 1; n < profiles.size(); ++n)
                worst = std::max(worst, profile_distance_bs(profiles[m], profiles[n]));
        rep.cauchy_modulus.push_back(worst);
    }
    return rep;
}

} // namespace stralg
