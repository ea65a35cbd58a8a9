#pragma once

#include <cstdint>
#include <vector>

#include "sievelab/plan.hpp"

namespace sievelab {

// Survivors of a sieve over [1, n], stored as a bitmap (bit i <=> integer i).
class SurvivorSet {
public:
    SurvivorSet() = default;
    SurvivorSet(uint64_t n, std::vector<uint64_t> words, uint64_t cardinality)
        : n_(n), words_(std::move(words)), card_(cardinality) {}

    uint64_t upper() const { return n_; }
    uint64_t cardinality() const { return card_; }

    bool contains(uint64_t v) const {
        if (v < 1 || v > n_) return false;
        return (words_[v >> 6] >> (v & 63)) & 1;
    }

    // Ascending member visit.
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            uint64_t bits = words_[w];
            while (bits) {
                unsigned b = static_cast<unsigned>(__builtin_ctzll(bits));
                f(static_cast<uint64_t>(w) * 64 + b);
                bits &= bits - 1;
            }
        }
    }

    std::vector<uint64_t> members() const {
        std::vector<uint64_t> out;
        out.reserve(card_);
        for_each([&](uint64_t v) { out.push_back(v); });
        return out;
    }

    const std::vector<uint64_t>& words() const { return words_; }

private:
    uint64_t n_ = 0;
    std::vector<uint64_t> words_;
    uint64_t card_ = 0;
};

// Remove every n in [1, plan.n] whose residue mod p lies in the plan's set,
// for each plan prime. The bitmap is partitioned into fixed word-aligned
// segments and primes stride within a segment, so no two segments touch the
// same word and the resulting bits are identical for any thread count.
SurvivorSet sieve(const SievePlan& plan);

// Same kernel run on one thread; kept as the reference for equivalence tests
// and benchmarks.
SurvivorSet sieve_serial(const SievePlan& plan);

} // namespace sievelab
