#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sievelab/phase.hpp"
#include "sievelab/sieve.hpp"

namespace sievelab {

// Histogram of survivor residues mod p: out[r] = #{ a in A : a ≡ r (mod p) }.
std::vector<uint64_t> residue_histogram(const SurvivorSet& a, uint32_t p);

// S_k = sum over a in A of e(k*a/p). Phases are reduced exactly as
// (k*r mod p)/p before the trig call, and the p residue terms are added in
// ascending residue order with a fixed-shape pairwise reduction.
std::complex<double> residue_exp_sum(const SurvivorSet& a, uint32_t p, uint32_t k);
std::complex<double> residue_exp_sum_serial(const SurvivorSet& a, uint32_t p,
                                            uint32_t k);

struct LemmaPrimeRecord {
    uint32_t p = 0;
    double s1_mag = 0, s2_mag = 0;
    double lhs = 0;       // 2|S1| + |S2|
    bool pass = false;    // lhs >= |A| - tol
    bool third_ok = false; // max(|S1|,|S2|) >= |A|/3 - tol
};

struct LemmaReport {
    uint64_t n = 0;
    uint64_t survivor_count = 0;
    double tol = 0;
    bool all_pass = true;
    uint32_t skipped_explicit = 0; // non-interval plan entries, not checked
    std::vector<LemmaPrimeRecord> primes; // ascending p
};

// For every interval-kind prime of the plan: a set avoiding an interval of
// (p-1)/2 residues mod p satisfies |A| <= 2|S_1| + |S_2|, hence
// max(|S_1|,|S_2|) >= |A|/3. Checks both with additive tolerance tol.
LemmaReport lemma_check(const SievePlan& plan, const SurvivorSet& a,
                        double tol = 1e-6);

// 1 - 2cos(theta) + cos(2theta); <= 0 on |theta| <= pi/2. The selftest
// returns the maximum over a uniform grid of that interval (endpoints
// included); grid_points >= 2.
double cosine_expression(double theta);
double cosine_selftest(unsigned grid_points = 20001);

// Evaluation points on the circle with pairwise distance >= delta. delta is
// in (0, 1]; a single point has vacuous separation (delta may be 1).
struct SeparatedPoints {
    std::vector<double> points; // ascending, in [0, 1)
    double delta = 1.0;
};

// All reduced fractions a/p with 1 <= p <= q, 0 <= a < p; delta = 1/q^2.
SeparatedPoints farey_points(uint32_t q);

struct SeparationViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LargeSieveResult {
    double lhs = 0;   // sum over points of |sum_n a_n e(n theta)|^2
    double bound = 0; // (N + 1/delta) * sum |a_n|^2
    double ratio = 0;
};

// a is indexed n = 1..N via a[n-1]. Rejects an all-zero sequence and throws
// SeparationViolation if two points are closer than delta on the circle.
LargeSieveResult large_sieve_check(const std::vector<std::complex<double>>& a,
                                   const SeparatedPoints& pts);

} // namespace sievelab
