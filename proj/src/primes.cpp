#include "sievelab/primes.hpp"

#include <cmath>
#include <stdexcept>

namespace sievelab {

std::vector<uint64_t> enumerate_primes(uint64_t limit) {
    if (limit > (uint64_t(1) << 32))
        throw std::invalid_argument("enumerate_primes: limit above 2^32");
    std::vector<uint64_t> primes;
    if (limit < 2) return primes;

    // Odd-only Eratosthenes; bit i represents 2i+1.
    uint64_t nodd = (limit + 1) / 2;
    std::vector<uint64_t> composite((nodd + 63) / 64, 0);
    auto test = [&](uint64_t i) { return (composite[i >> 6] >> (i & 63)) & 1; };
    auto set = [&](uint64_t i) { composite[i >> 6] |= uint64_t(1) << (i & 63); };

    for (uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
        if (test(i)) continue;
        uint64_t p = 2 * i + 1;
        for (uint64_t j = (p * p - 1) / 2; j < nodd; j += p) set(j);
    }
    primes.push_back(2);
    for (uint64_t i = 1; i < nodd; ++i)
        if (!test(i)) primes.push_back(2 * i + 1);
    return primes;
}

uint64_t isqrt(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

uint64_t icbrt(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::cbrt(static_cast<double>(n)));
    auto cube_le = [&](uint64_t v) {
        if (v == 0) return true;
        if (v > 2642245) return false; // 2642245^3 < 2^64 <= 2642246^3
        return v * v * v <= n;
    };
    while (r > 0 && !cube_le(r)) --r;
    while (cube_le(r + 1)) ++r;
    return r;
}

} // namespace sievelab
