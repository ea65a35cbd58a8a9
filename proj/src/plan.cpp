#include "sievelab/plan.hpp"

#include <algorithm>
#include <stdexcept>

#include "sievelab/primes.hpp"
#include "sievelab/rng.hpp"

namespace sievelab {

bool ResidueSet::contains(uint32_t r) const {
    if (kind == Kind::interval) {
        // Wrapped membership: r in {start, start+1, ..., start+length-1 mod p}.
        return ((r + p - start) % p) < length;
    }
    return std::binary_search(elements.begin(), elements.end(), r);
}

std::vector<uint32_t> ResidueSet::residues() const {
    if (kind == Kind::explicit_set) return elements;
    std::vector<uint32_t> out;
    out.reserve(length);
    for (uint32_t i = 0; i < length; ++i) out.push_back((start + i) % p);
    std::sort(out.begin(), out.end());
    return out;
}

const ResidueSet* SievePlan::find(uint32_t p) const {
    for (const auto& e : entries)
        if (e.p == p) return &e;
    return nullptr;
}

PlanStrategy PlanStrategy::random_start(uint64_t seed) {
    PlanStrategy s;
    s.kind = Kind::random_start;
    s.seed = seed;
    return s;
}

PlanStrategy PlanStrategy::fixed_start(uint64_t c_num, uint64_t c_den) {
    PlanStrategy s;
    s.kind = Kind::fixed_start;
    s.c_num = c_num;
    s.c_den = c_den;
    return s;
}

PlanStrategy PlanStrategy::qnr() {
    PlanStrategy s;
    s.kind = Kind::qnr;
    return s;
}

std::string PlanStrategy::name() const {
    switch (kind) {
        case Kind::middle_half: return "middle-half";
        case Kind::random_start: return "random";
        case Kind::fixed_start: return "fixed-start";
        case Kind::qnr: return "qnr";
    }
    return "?";
}

SievePlan make_interval_plan(uint64_t n, const PlanStrategy& strategy) {
    if (strategy.kind == PlanStrategy::Kind::qnr)
        throw std::invalid_argument("make_interval_plan: qnr is not an interval strategy");
    if (strategy.kind == PlanStrategy::Kind::fixed_start) {
        if (strategy.c_den == 0 || strategy.c_num >= strategy.c_den)
            throw std::invalid_argument("make_interval_plan: start fraction must lie in [0,1)");
    }

    SievePlan plan;
    plan.n = n;
    DetRng rng(strategy.seed);
    for (uint64_t p : enumerate_primes(isqrt(n))) {
        if (p == 2) continue;
        ResidueSet rs;
        rs.p = static_cast<uint32_t>(p);
        rs.kind = ResidueSet::Kind::interval;
        rs.length = static_cast<uint32_t>((p - 1) / 2);
        switch (strategy.kind) {
            case PlanStrategy::Kind::middle_half:
                rs.start = static_cast<uint32_t>((p + 3) / 4);
                break;
            case PlanStrategy::Kind::random_start:
                rs.start = static_cast<uint32_t>(rng.below(p));
                break;
            case PlanStrategy::Kind::fixed_start: {
                // floor(c*p) exactly; the product fits in 128 bits for any
                // representable fraction.
                unsigned __int128 prod =
                    static_cast<unsigned __int128>(strategy.c_num) * p;
                rs.start = static_cast<uint32_t>(
                    static_cast<uint64_t>(prod / strategy.c_den) % p);
                break;
            }
            default:
                break;
        }
        plan.entries.push_back(std::move(rs));
    }
    return plan;
}

SievePlan make_qnr_plan(uint64_t n) {
    SievePlan plan;
    plan.n = n;
    for (uint64_t pp : enumerate_primes(isqrt(n))) {
        if (pp == 2) continue;
        auto p = static_cast<uint32_t>(pp);
        std::vector<char> is_square(p, 0);
        for (uint64_t k = 1; k <= (p - 1) / 2; ++k)
            is_square[static_cast<uint32_t>(k * k % p)] = 1;
        ResidueSet rs;
        rs.p = p;
        rs.kind = ResidueSet::Kind::explicit_set;
        rs.elements.reserve((p - 1) / 2);
        for (uint32_t r = 1; r < p; ++r)
            if (!is_square[r]) rs.elements.push_back(r);
        plan.entries.push_back(std::move(rs));
    }
    return plan;
}

SievePlan make_plan(uint64_t n, const PlanStrategy& strategy) {
    if (strategy.kind == PlanStrategy::Kind::qnr) return make_qnr_plan(n);
    return make_interval_plan(n, strategy);
}

} // namespace sievelab
