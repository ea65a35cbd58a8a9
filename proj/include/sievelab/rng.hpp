#pragma once

#include <cstdint>
#include <random>

namespace sievelab {

// Deterministic source for every randomized operation. mt19937_64 output is
// pinned by the standard, and the helpers below avoid std::*_distribution,
// whose draw sequences vary between library implementations. Identical seeds
// give identical draw sequences on any platform.
class DetRng {
public:
    explicit DetRng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    // Uniform in [0, m). Plain modulo draw; bias is ~m/2^64 and irrelevant
    // next to the reproducibility requirement.
    uint64_t below(uint64_t m) { return eng_() % m; }

    // Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform in [-1, 1).
    double symmetric() { return 2.0 * unit() - 1.0; }

private:
    std::mt19937_64 eng_;
};

} // namespace sievelab
