#pragma once

#include <cstdint>

namespace boxlab {

// Deterministic splittable randomness.  Every randomized operation takes an
// explicit 64-bit seed; independent streams are derived by mixing the seed
// with stream tags, so results never depend on evaluation order or thread
// count.  SplitMix64 is used because it is trivially reproducible across
// platforms and has no shared state.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound); unbiased via rejection.  bound >= 1.
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Derives an independent stream seed from (seed, tag).
inline uint64_t mix_seed(uint64_t seed, uint64_t tag) {
    SplitMix64 g(seed ^ (tag * 0xd1b54a32d192ed03ull + 0x632be59bd9b4e019ull));
    g.next();
    return g.next();
}

inline uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b) {
    return mix_seed(mix_seed(seed, a), b);
}

inline uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
    return mix_seed(mix_seed(seed, a, b), c);
}

}  // namespace boxlab
