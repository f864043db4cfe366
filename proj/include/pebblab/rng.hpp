#pragma once
#include <cstdint>

namespace pebblab {

// SplitMix64 stream. Small state, full 64-bit output, passes BigCrush as a
// mixer. Used both as the trial-level generator and to derive independent
// sub-seeds, so experiment results are reproducible under any execution
// order of trials.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased draw from [0, bound). bound must be > 0.
    uint64_t below(uint64_t bound) {
        // Lemire's multiply-shift with rejection.
        uint64_t x = next();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        uint64_t lo = static_cast<uint64_t>(m);
        if (lo < bound) {
            uint64_t threshold = -bound % bound;
            while (lo < threshold) {
                x = next();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    uint64_t state_;
};

// Stable mix of up to four 64-bit words into one sub-seed. Feeding each
// word through the SplitMix64 step decorrelates nearby (seed, n, t, trial)
// tuples.
inline uint64_t mix_seed(uint64_t a, uint64_t b = 0, uint64_t c = 0, uint64_t d = 0) {
    SplitMix64 h(a);
    uint64_t s = h.next();
    s ^= SplitMix64(s + b).next();
    s ^= SplitMix64(s + c).next();
    s ^= SplitMix64(s + d).next();
    return s;
}

} // namespace pebblab
