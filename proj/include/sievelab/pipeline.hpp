#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sievelab/fourier.hpp"
#include "sievelab/plan.hpp"
#include "sievelab/sieve.hpp"

namespace sievelab {

struct SequenceNorms {
    double l1 = 0;
    double l2 = 0;
    double l43 = 0; // (sum |a|^(4/3))^(3/4)
};

SequenceNorms norms(const std::vector<std::complex<double>>& a);

// Second-moment comparison over moduli x in [X, 2X): the measured sum of
// |sum_n a_n e(k n / x)|^2 against the envelope (N+X^3)^(1/4) * X^(1/2)
// * l43 * l1. lhs_primes restricts the outer sum to prime x. Phases are
// reduced exactly via residues mod x. a is indexed n = 1..N as a[n-1].
struct MomentRow {
    uint32_t k = 0;
    uint64_t x = 0;
    double lhs = 0;
    double lhs_primes = 0;
    uint64_t prime_count = 0; // primes in [X, 2X)
    double rhs = 0;
    double ratio = 0; // lhs / rhs
};

MomentRow prop_moment_ratio(const std::vector<std::complex<double>>& a,
                            uint64_t x, uint32_t k);

// Consistency of the per-prime lower bounds over x in [X, 2X): summing
// max(|S1|,|S2|)^2 over the plan primes in that window must reach
// (#primes) * (|A|/3)^2.
struct ChainCheck {
    uint64_t prime_count = 0;
    double sum_max_sq = 0;
    double lower = 0;
    bool pass = true;
};

struct PipelineReport {
    uint64_t n = 0;
    std::string strategy;
    uint64_t seed = 0;
    uint64_t survivor_count = 0;
    uint64_t x = 0; // floor(n^(1/3))
    LemmaReport lemma;
    std::vector<MomentRow> moments; // k = 1 and k = 2
    ChainCheck chain;
    double ratio_cbrt = 0; // |A| / n^(1/3)
    double ratio_sqrt = 0; // |A| / sqrt(n)
    double elapsed_s = 0;
};

// Plan -> sieve -> per-prime inequality check -> second-moment rows at
// X = floor(n^(1/3)) for k = 1, 2 with the survivor indicator sequence.
// Requires n >= 9 (at least one odd prime <= sqrt(n)). x_override replaces
// the default X when nonzero; it must stay within [1, n].
PipelineReport run_pipeline(uint64_t n, const PlanStrategy& strategy,
                            double tol = 1e-6, uint64_t x_override = 0);

struct SweepRow {
    uint64_t n = 0;
    std::optional<PipelineReport> report;
    std::string error; // failure isolated per n
};

// One pipeline run per n, in input order; an empty list yields an empty
// table. A row's failure is captured in its error field, not propagated.
std::vector<SweepRow> sweep(const std::vector<uint64_t>& ns,
                            const PlanStrategy& strategy, double tol = 1e-6,
                            uint64_t x_override = 0);

} // namespace sievelab
