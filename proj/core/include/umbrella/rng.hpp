#pragma once

#include <cstdint>

namespace umbrella {

/// splitmix64: tiny, seedable, platform-independent. Parallel consumers
/// derive independent streams with split(), so serial and parallel runs
/// agree term by term.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// In {0, ..., n-1}.
    uint64_t below(uint64_t n) { return next() % n; }
    int64_t int_in(int64_t lo, int64_t hi) {  // inclusive
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }
    Rng split(uint64_t stream) const {
        Rng r(state ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
        r.next();
        return r;
    }
};

}  // namespace umbrella
