#pragma once

#include <cstdint>
#include <span>

namespace rheaom {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic across platforms and compilers, unlike the std distributions.
// xoshiro256** seeded through splitmix64.
class Rng {
public:
    explicit Rng(uint64_t seed = 0) { reseed(seed); }

    void reseed(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, bound), bound > 0. Multiply-shift; bias is negligible
    // for the small bounds used here and the result is fully deterministic.
    uint32_t uniform_int(uint32_t bound) {
        return static_cast<uint32_t>((static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    // Uniform on [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool chance(double p) { return uniform01() < p; }

    template <typename T>
    const T& pick(std::span<const T> items) {
        return items[uniform_int(static_cast<uint32_t>(items.size()))];
    }

    // Counter-based stream split: child streams are independent of how many
    // siblings are derived and of the order they are drawn in.
    static uint64_t derive(uint64_t seed, uint64_t index) {
        uint64_t sm = seed ^ (0x9e3779b97f4a7c15ULL + index * 0xd1b54a32d192ed03ULL);
        return splitmix64(sm);
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t state_[4];
};

}  // namespace rheaom
