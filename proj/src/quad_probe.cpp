#include "sievelab/quad_probe.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace sievelab {

namespace {

std::vector<int64_t> second_diffs(const std::vector<int64_t>& s) {
    std::vector<int64_t> d2;
    if (s.size() >= 3) {
        d2.reserve(s.size() - 2);
        for (std::size_t i = 0; i + 2 < s.size(); ++i)
            d2.push_back(s[i + 2] - 2 * s[i + 1] + s[i]);
    }
    return d2;
}

// Strict-majority value of d2, or nullopt-like flag via bool.
bool majority_value(const std::vector<int64_t>& d2, int64_t& out) {
    std::map<int64_t, std::size_t> freq;
    for (int64_t v : d2) ++freq[v];
    for (const auto& [v, c] : freq) {
        if (2 * c > d2.size()) {
            out = v;
            return true;
        }
    }
    return false;
}

std::size_t best_multiplicity(const std::vector<int64_t>& d2) {
    std::map<int64_t, std::size_t> freq;
    std::size_t best = 0;
    for (int64_t v : d2) best = std::max(best, ++freq[v]);
    return best;
}

} // namespace

QuadProbeResult quadratic_cover_check(const std::vector<uint64_t>& members,
                                      unsigned k) {
    if (members.size() < 3)
        throw std::invalid_argument("quadratic_cover_check: need at least 3 members");

    std::vector<int64_t> work(members.begin(), members.end());
    std::sort(work.begin(), work.end());
    work.erase(std::unique(work.begin(), work.end()), work.end());

    QuadProbeResult res;
    for (unsigned round = 0;; ++round) {
        if (work.size() >= 3) {
            auto d2 = second_diffs(work);
            int64_t v;
            if (majority_value(d2, v)) {
                mpq_class alpha(v, 2);
                alpha.canonicalize();
                // Anchor at the first conforming difference; member work[j]
                // sits at argument j+1.
                std::size_t j = 0;
                while (d2[j] != v) ++j;
                mpq_class t1(static_cast<long>(j + 1));
                // f(t1+1) - f(t1) = alpha*(2*t1+1) + beta
                mpq_class beta = mpq_class(work[j + 1] - work[j]) -
                                 alpha * (2 * t1 + 1);
                mpq_class gamma = mpq_class(work[j]) - alpha * t1 * t1 - beta * t1;

                // Exact substitution at consecutive arguments; outliers are
                // the removed members plus any in-place mismatch.
                uint64_t mismatches = 0;
                for (std::size_t i = 0; i < work.size(); ++i) {
                    mpq_class t(static_cast<long>(i + 1));
                    if (alpha * t * t + beta * t + gamma != work[i]) ++mismatches;
                }
                if (res.removed.size() + mismatches <= k) {
                    res.found = true;
                    res.alpha = alpha;
                    res.beta = beta;
                    res.gamma = gamma;
                    res.misses = res.removed.size() + mismatches;
                    return res;
                }
            }
        }
        if (round >= k || work.size() <= 3) break;
        // Repair: drop the member whose removal gives the most agreeing
        // second differences; ties go to the smallest member.
        std::size_t best_i = 0, best_score = 0;
        for (std::size_t i = 0; i < work.size(); ++i) {
            std::vector<int64_t> trial;
            trial.reserve(work.size() - 1);
            for (std::size_t j = 0; j < work.size(); ++j)
                if (j != i) trial.push_back(work[j]);
            std::size_t score = best_multiplicity(second_diffs(trial));
            if (score > best_score) {
                best_score = score;
                best_i = i;
            }
        }
        res.removed.push_back(static_cast<uint64_t>(work[best_i]));
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(best_i));
    }
    return QuadProbeResult{}; // inconclusive
}

} // namespace sievelab
