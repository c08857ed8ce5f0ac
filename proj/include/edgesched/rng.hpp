#pragma once

#include <cstdint>
#include <random>

namespace edgesched {

// Deterministic random stream used everywhere in this project.
//
// std::mt19937_64 has a standard-mandated output sequence, so identical
// seeds give identical streams on every platform. The float/int mappings
// below are hand-rolled because std::uniform_*_distribution is
// implementation-defined and would break cross-platform reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1), 53 bits of entropy.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Uniform integer in [0, n). Modulo bias is below 2^-50 for any n
    // this project draws, which is far under test tolerances.
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(index(static_cast<std::size_t>(hi - lo + 1)));
    }

    bool coin(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace edgesched
