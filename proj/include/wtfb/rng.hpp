#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace wtfb {

// Counter-based pseudo randomness. Every draw is a pure function of the seed
// and a handful of stream indices, so trials, grid points and codeword
// symbols can be generated in any order (or from any thread) and still come
// out identical.

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t hash_combine(uint64_t h, uint64_t v) {
    return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

inline uint64_t hash_u64(uint64_t a) { return splitmix64(a); }
inline uint64_t hash_u64(uint64_t a, uint64_t b) { return hash_combine(splitmix64(a), b); }
inline uint64_t hash_u64(uint64_t a, uint64_t b, uint64_t c) {
    return hash_combine(hash_u64(a, b), c);
}
inline uint64_t hash_u64(uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
    return hash_combine(hash_u64(a, b, c), d);
}
inline uint64_t hash_u64(uint64_t a, uint64_t b, uint64_t c, uint64_t d, uint64_t e) {
    return hash_combine(hash_u64(a, b, c, d), e);
}

// Uniform double in [0, 1) from 53 high bits.
inline double to_unit(uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Sequential generator for places where a stream is more natural than a
// counter (shuffles, stratified sampling). Still seeded and deterministic.
class SplitMix {
public:
    explicit SplitMix(uint64_t seed) : state_(seed) {}
    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
    double next_unit() { return to_unit(next()); }
    // uniform integer in [0, n)
    uint64_t next_below(uint64_t n) { return next() % n; }

private:
    uint64_t state_;
};

// Inverse-CDF draw of a symbol from a probability vector.
inline int sample_symbol(std::span<const double> probs, double unit) {
    double acc = 0.0;
    int last = 0;
    for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
        acc += probs[i];
        if (unit < acc) return i;
        if (probs[i] > 0.0) last = i;
    }
    return last; // unit landed in the rounding tail
}

} // namespace wtfb
