#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace sievelab {

// Thrown when a job would exceed a configured resource bound; the job is
// refused, never silently truncated.
struct ResourceCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Threshold exponent e = num/den > 0; the closeness cutoff is 1/X^e.
struct RationalExponent {
    uint64_t num = 1;
    uint64_t den = 1;

    bool is_integer() const { return den == 1; }
    std::string str() const;
};

struct TupleCountParams {
    uint64_t x = 2;
    uint32_t r = 1;
    RationalExponent e; // defaulted to r+1 when num == 0
    // Refusal bound on the number of enumerated half-sums (X^r).
    uint64_t max_half_sums = 200'000'000;

    TupleCountParams() { e.num = 0; }
};

struct TupleCountReport {
    uint64_t x = 0;
    uint32_t r = 0;
    RationalExponent e;
    uint64_t count = 0;          // ordered 2r-tuples within the cutoff
    uint64_t diagonal_count = 0; // second half a permutation of the first
    uint64_t half_sums = 0;      // X^r
    uint64_t distinct_sums = 0;
    uint64_t equal_pair_count = 0; // pairs with exactly equal half-sums
    std::string backend;           // "int128" or "bigint"
    double elapsed_s = 0;
};

// Count ordered 2r-tuples (x_1..x_2r) in [X, 2X)^2r with
// |sum_{i<=r} 1/x_i - sum_{i>r} 1/x_i| <= 1/X^e, decided exactly in integer
// arithmetic. Enumerates the X^r half-sums with a per-half common
// denominator (num over the product of the tuple), sorts exactly, and counts
// window pairs. Jobs above max_half_sums are refused outright. The parallel
// kernel uses per-element binary searches; the serial reference walks a
// two-pointer window. Both return identical counts.
TupleCountReport count_close_tuples(const TupleCountParams& params);
TupleCountReport count_close_tuples_serial(const TupleCountParams& params);

// Independent oracle: direct 2r-fold nested enumeration with GMP rationals.
// Refuses X^(2r) > 10^8 tuples.
uint64_t brute_force_close_tuples(uint64_t x, uint32_t r, RationalExponent e);

// Least-squares slope of log(count) against log(x). Needs >= 2 points with
// distinct positive x and positive counts.
double exponent_fit(const std::vector<std::pair<double, double>>& points);

// S(xi) = sum over x <= v < 2x of e(xi/v), with the phase reduced exactly to
// (xi mod v)/v. xi must be a nonnegative integer (arbitrary precision).
std::complex<double> reciprocal_expsum(uint64_t x, const mpz_class& xi);
std::complex<double> reciprocal_expsum_serial(uint64_t x, const mpz_class& xi);

struct SupScanResult {
    uint64_t x = 0;
    uint32_t r = 0;
    uint64_t samples = 0;
    uint64_t seed = 0;
    double max_normalized = 0; // max |S(xi)| / sqrt(X)
    double max_magnitude = 0;
    mpz_class argmax_xi;
};

// Draw `samples` integers xi log-uniformly from [X^2, X^(r+1)] and report the
// largest |S(xi)|/sqrt(X). The xi sequence depends only on the seed; the
// maximum is reduced with an index tie-break, so results are identical for
// any thread count.
SupScanResult sup_scan(uint64_t x, uint32_t r, uint64_t samples, uint64_t seed);
SupScanResult sup_scan_serial(uint64_t x, uint32_t r, uint64_t samples,
                              uint64_t seed);

} // namespace sievelab
