#include "sievelab/sieve.hpp"

#include <algorithm>
#include <stdexcept>

namespace sievelab {

namespace {

// Segment size in words. Fixed once; results must not depend on it, only
// the work partition does.
constexpr uint64_t kSegmentWords = 1 << 12;

// Clear bits of values v in [lo, hi] with v ≡ c (mod p).
inline void clear_class(std::vector<uint64_t>& words, uint64_t lo, uint64_t hi,
                        uint32_t p, uint32_t c) {
    uint64_t v = lo + (c + static_cast<uint64_t>(p) - lo % p) % p;
    for (; v <= hi; v += p) words[v >> 6] &= ~(uint64_t(1) << (v & 63));
}

void sieve_segment(std::vector<uint64_t>& words, const SievePlan& plan,
                   uint64_t seg) {
    uint64_t wlo = seg * kSegmentWords;
    uint64_t lo = wlo * 64;
    uint64_t hi = std::min(plan.n, (wlo + kSegmentWords) * 64 - 1);
    if (lo < 1) lo = 1;
    if (lo > hi) return;
    for (const auto& rs : plan.entries) {
        if (rs.kind == ResidueSet::Kind::interval) {
            for (uint32_t i = 0; i < rs.length; ++i)
                clear_class(words, lo, hi, rs.p, (rs.start + i) % rs.p);
        } else {
            for (uint32_t c : rs.elements) clear_class(words, lo, hi, rs.p, c);
        }
    }
}

SurvivorSet run(const SievePlan& plan, bool parallel) {
    if (plan.n == 0) throw std::invalid_argument("sieve: n must be positive");
    uint64_t nwords = (plan.n >> 6) + 1;
    std::vector<uint64_t> words(nwords, ~uint64_t(0));
    words[0] &= ~uint64_t(1); // 0 is not in [1, n]
    // Mask tail bits beyond n.
    unsigned tail = static_cast<unsigned>(plan.n & 63);
    if (tail != 63) words[nwords - 1] &= (uint64_t(2) << tail) - 1;

    int64_t nseg = static_cast<int64_t>((nwords + kSegmentWords - 1) / kSegmentWords);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int64_t seg = 0; seg < nseg; ++seg)
        sieve_segment(words, plan, static_cast<uint64_t>(seg));

    uint64_t card = 0;
#pragma omp parallel for reduction(+ : card) if (parallel)
    for (int64_t w = 0; w < static_cast<int64_t>(nwords); ++w)
        card += static_cast<uint64_t>(__builtin_popcountll(words[w]));

    return SurvivorSet(plan.n, std::move(words), card);
}

} // namespace

SurvivorSet sieve(const SievePlan& plan) { return run(plan, true); }

SurvivorSet sieve_serial(const SievePlan& plan) { return run(plan, false); }

} // namespace sievelab
