#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sievelab {

// Residues sieved out modulo one odd prime. Interval sets wrap modulo p;
// explicit sets hold sorted residues in [0, p). Cardinality is always
// (p-1)/2 for the plans built here.
struct ResidueSet {
    enum class Kind { interval, explicit_set };

    uint32_t p = 0;
    Kind kind = Kind::interval;
    uint32_t start = 0;  // interval only
    uint32_t length = 0; // interval only
    std::vector<uint32_t> elements; // explicit_set only, sorted

    uint32_t cardinality() const {
        return kind == Kind::interval ? length
                                      : static_cast<uint32_t>(elements.size());
    }

    // Is residue r (0 <= r < p) sieved out?
    bool contains(uint32_t r) const;

    // Materialized residue list, ascending.
    std::vector<uint32_t> residues() const;
};

// One residue set per odd prime p <= floor(sqrt(n)), ascending in p.
// The prime 2 never sieves.
struct SievePlan {
    uint64_t n = 0;
    std::vector<ResidueSet> entries;

    const ResidueSet* find(uint32_t p) const;
};

struct PlanStrategy {
    enum class Kind { middle_half, random_start, fixed_start, qnr };

    Kind kind = Kind::middle_half;
    uint64_t seed = 0;              // random_start
    uint64_t c_num = 0, c_den = 1;  // fixed_start: exact fraction in [0,1)

    static PlanStrategy middle_half() { return {}; }
    static PlanStrategy random_start(uint64_t seed);
    // c given as an exact fraction so that starts like floor(p/3) come out
    // exactly; a binary double for 1/3 would round floor(c*p) down at p=3.
    static PlanStrategy fixed_start(uint64_t c_num, uint64_t c_den);
    static PlanStrategy qnr();

    std::string name() const;
};

// Interval plan: for each odd prime p <= floor(sqrt(n)) an interval of
// (p-1)/2 consecutive residues. middle_half starts at (p+3)/4, centring the
// interval on p/2; random_start draws one start per prime, ascending in p,
// from a single seeded stream; fixed_start uses floor(c*p) computed in
// integer arithmetic. Rejects the qnr kind and c outside [0,1).
SievePlan make_interval_plan(uint64_t n, const PlanStrategy& strategy);

// Explicit plan sieving out the quadratic non-residues modulo each odd
// prime p <= floor(sqrt(n)). 0 is a residue of its own class and is never
// sieved, so every perfect square survives the resulting sieve.
SievePlan make_qnr_plan(uint64_t n);

// Dispatch on strategy kind.
SievePlan make_plan(uint64_t n, const PlanStrategy& strategy);

} // namespace sievelab
