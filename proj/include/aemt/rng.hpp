#pragma once

#include <cstdint>

namespace aemt {

// Deterministic 64-bit generator (splitmix64). The standard <random>
// distributions are implementation-defined, so everything that must
// reproduce bit-for-bit across platforms goes through this.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound) by rejection; bound >= 1
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    // uniform in [0,1) with 53-bit resolution
    double unit() { return double(next() >> 11) * 0x1.0p-53; }

    // independent substream, stable under reordering of draws elsewhere
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        Rng mix(seed);
        std::uint64_t a = mix.next();
        Rng mix2(a + 0x632be59bd9b4e019ULL * (index + 1));
        return Rng(mix2.next());
    }

private:
    std::uint64_t state_;
};

} // namespace aemt
