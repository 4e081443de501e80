#ifndef ITERSTBC_RNG_HPP
#define ITERSTBC_RNG_HPP

#include <cstdint>

namespace iterstbc {

// Counter-style splittable generator: every draw is a pure function of
// (seed, counter), so parallel consumers can key their own streams and
// results do not depend on scheduling.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound)
    uint64_t below(uint64_t bound) { return next() % bound; }

    // uniform integer in [lo, hi]
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    // uniform in (0, 1]
    double unit() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }
};

inline uint64_t hash_combine(uint64_t a, uint64_t b) {
    SplitMix64 g(a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2)));
    return g.next();
}

// Stream keyed by (seed, index): reproducible under any execution order.
inline SplitMix64 keyed_rng(uint64_t seed, uint64_t index) {
    return SplitMix64(hash_combine(seed, index));
}

}  // namespace iterstbc

#endif
