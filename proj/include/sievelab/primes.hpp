#pragma once

#include <cstdint>
#include <vector>

namespace sievelab {

// All primes <= limit, ascending. limit < 2 yields an empty list.
// Refuses limit > 2^32 (the sieve bitmap would exceed the desk-scale budget).
std::vector<uint64_t> enumerate_primes(uint64_t limit);

// floor(sqrt(n)) and floor(cbrt(n)), exact for all uint64 inputs.
uint64_t isqrt(uint64_t n);
uint64_t icbrt(uint64_t n);

} // namespace sievelab
