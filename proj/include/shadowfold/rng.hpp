#pragma once

#include <cstdint>

namespace shadowfold {

// Deterministic splitmix64 stream. Standard <random> distributions are not
// pinned across library versions, so all sampling goes through this.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // uniform in {0, ..., n-1}
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    bool next_bool() { return (next_u64() & 1) != 0; }

private:
    std::uint64_t state_;
};

// Independent per-trial stream derived from a master seed. Trials may run in
// any order or in parallel and still reproduce bit-identically.
inline Rng trial_rng(std::uint64_t master_seed, std::uint64_t trial) {
    Rng mix(master_seed ^ (0x9E3779B97F4A7C15ULL * (trial + 1)));
    mix.next_u64();
    return Rng(mix.next_u64());
}

}  // namespace shadowfold
