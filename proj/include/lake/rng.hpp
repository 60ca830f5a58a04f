#pragma once
#include <cstdint>

namespace lake {

// SplitMix64: tiny deterministic generator. Used for probe sample fields and
// test perturbations; results are identical on every platform, unlike the
// standard-library distributions.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [lo,hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

}  // namespace lake
