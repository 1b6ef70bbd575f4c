#pragma once

#include <cstdint>
#include <random>

namespace stralg {

// All randomness in the artifact flows through this wrapper around
// std::mt19937_64.  The engine's output sequence is pinned by the standard,
// and we avoid std::*_distribution (whose mappings are implementation
// defined), so identical seeds give identical results on every platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t u64() { return eng_(); }

    // Uniform draw from [0, n); n = 0 returns 0.
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        // rejection sampling keeps the draw exactly uniform
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    long range(long lo, long hi) { // inclusive bounds
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    bool chance(uint32_t num, uint32_t den) { return below(den) < num; }

private:
    std::mt19937_64 eng_;
};

} // namespace stralg
