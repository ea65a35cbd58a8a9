#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace sievelab {

// Exact rational with canonical reduced form and positive denominator.
using BigRational = mpq_class;

// Sum of 1/x over xs, exact. Empty input gives 0.
BigRational reciprocal_sum(const std::vector<uint64_t>& xs);

// "47/60", or just "2" when the denominator is 1.
std::string rational_str(const BigRational& q);

// base^e for e >= 0.
mpz_class ipow(const mpz_class& base, uint64_t e);

} // namespace sievelab
