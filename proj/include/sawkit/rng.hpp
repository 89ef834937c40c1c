#ifndef SAWKIT_RNG_HPP
#define SAWKIT_RNG_HPP

#include <cstdint>

namespace sawkit {

// SplitMix64: the project's single random generator.  Chosen because its
// output is fully specified by the 64-bit state update below, so seeded runs
// reproduce bit-exactly on any platform and any thread count (streams are
// derived per work item, never shared).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0,1) with 53 random bits.
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n) by rejection (n must be > 0).
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Derived stream seed for work item (a, b): mixes the parts through the
    // same permutation so streams are decorrelated.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
        SplitMix64 m(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xc2b2ae3d27d4eb4fULL));
        return m.next();
    }

private:
    std::uint64_t state_;
};

} // namespace sawkit

#endif
