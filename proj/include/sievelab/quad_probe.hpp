#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace sievelab {

// Outcome of the quadratic cover probe. A heuristic: found=false means the
// probe was inconclusive, not that no quadratic exists.
struct QuadProbeResult {
    bool found = false;
    mpq_class alpha, beta, gamma; // f(t) = alpha t^2 + beta t + gamma
    uint64_t misses = 0;          // members not covered (outliers), <= k
    std::vector<uint64_t> removed; // outlier values dropped before the fit
};

// Does the member list look like consecutive values of one quadratic, up to
// at most k outliers? Votes on the second differences of the sorted members
// (a strict majority is required), fits the quadratic through the first
// conforming pair, and verifies every remaining member by exact substitution
// before reporting. Up to k repair rounds each drop the member whose removal
// most improves second-difference agreement. Requires at least 3 members.
QuadProbeResult quadratic_cover_check(const std::vector<uint64_t>& members,
                                      unsigned k);

} // namespace sievelab
