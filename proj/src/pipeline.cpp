#include "sievelab/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "sievelab/pairwise.hpp"
#include "sievelab/phase.hpp"
#include "sievelab/primes.hpp"

namespace sievelab {

SequenceNorms norms(const std::vector<std::complex<double>>& a) {
    std::vector<double> t1(a.size()), t2(a.size()), t43(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        double m = std::abs(a[i]);
        t1[i] = m;
        t2[i] = m * m;
        t43[i] = std::pow(m, 4.0 / 3.0);
    }
    SequenceNorms out;
    out.l1 = pairwise_sum(t1);
    out.l2 = std::sqrt(pairwise_sum(t2));
    out.l43 = std::pow(pairwise_sum(t43), 0.75);
    return out;
}

MomentRow prop_moment_ratio(const std::vector<std::complex<double>>& a,
                            uint64_t x, uint32_t k) {
    uint64_t n = a.size();
    if (n == 0) throw std::invalid_argument("prop_moment_ratio: empty sequence");
    if (x < 1 || x > n)
        throw std::invalid_argument("prop_moment_ratio: need 1 <= x <= n");
    bool nonzero = false;
    for (const auto& v : a) nonzero = nonzero || v != std::complex<double>{};
    if (!nonzero)
        throw std::invalid_argument("prop_moment_ratio: sequence is all zero");

    auto primes = enumerate_primes(2 * x - 1);

    MomentRow row;
    row.k = k;
    row.x = x;

    std::vector<double> full(x), prime_only(x);
#pragma omp parallel for schedule(dynamic)
    for (int64_t i = 0; i < static_cast<int64_t>(x); ++i) {
        uint64_t mod = x + static_cast<uint64_t>(i);
        // Bucket the sequence by residue, ascending n within each bucket,
        // then one exact-phase term per residue.
        std::vector<std::complex<double>> buckets(mod);
        for (uint64_t j = 0; j < n; ++j) buckets[(j + 1) % mod] += a[j];
        std::vector<std::complex<double>> terms(mod);
        for (uint64_t r = 0; r < mod; ++r) {
            uint64_t rot = (static_cast<uint64_t>(k) * r) % mod;
            terms[r] = buckets[r] *
                       unit_e(static_cast<double>(rot) / static_cast<double>(mod));
        }
        double sq = std::norm(pairwise_sum(terms));
        full[i] = sq;
        bool is_prime = std::binary_search(primes.begin(), primes.end(), mod);
        prime_only[i] = is_prime ? sq : 0.0;
    }

    uint64_t pcount = 0;
    for (uint64_t m = x; m < 2 * x; ++m)
        if (std::binary_search(primes.begin(), primes.end(), m)) ++pcount;

    SequenceNorms nm = norms(a);
    row.lhs = pairwise_sum(full);
    row.lhs_primes = pairwise_sum(prime_only);
    row.prime_count = pcount;
    double nd = static_cast<double>(n), xd = static_cast<double>(x);
    row.rhs = std::pow(nd + xd * xd * xd, 0.25) * std::sqrt(xd) * nm.l43 * nm.l1;
    row.ratio = row.lhs / row.rhs;
    return row;
}

PipelineReport run_pipeline(uint64_t n, const PlanStrategy& strategy, double tol,
                            uint64_t x_override) {
    auto t0 = std::chrono::steady_clock::now();
    if (n < 9) throw std::invalid_argument("run_pipeline: n must be >= 9");
    if (x_override > n)
        throw std::invalid_argument("run_pipeline: x_override exceeds n");

    PipelineReport rep;
    rep.n = n;
    rep.strategy = strategy.name();
    rep.seed = strategy.seed;

    SievePlan plan = make_plan(n, strategy);
    SurvivorSet a = sieve(plan);
    rep.survivor_count = a.cardinality();
    rep.lemma = lemma_check(plan, a, tol);
    rep.x = x_override > 0 ? x_override : icbrt(n);

    std::vector<std::complex<double>> ind(n, std::complex<double>{});
    a.for_each([&](uint64_t v) { ind[v - 1] = 1.0; });
    if (rep.survivor_count > 0) {
        rep.moments.push_back(prop_moment_ratio(ind, rep.x, 1));
        rep.moments.push_back(prop_moment_ratio(ind, rep.x, 2));
    }

    // Per-prime lower bounds summed over the plan primes in [X, 2X).
    double third = static_cast<double>(rep.survivor_count) / 3.0;
    for (const auto& rec : rep.lemma.primes) {
        if (rec.p >= rep.x && rec.p < 2 * rep.x) {
            double mx = std::max(rec.s1_mag, rec.s2_mag);
            rep.chain.sum_max_sq += mx * mx;
            ++rep.chain.prime_count;
        }
    }
    rep.chain.lower = static_cast<double>(rep.chain.prime_count) * third * third;
    rep.chain.pass = rep.chain.sum_max_sq >= rep.chain.lower - tol;

    double nd = static_cast<double>(n);
    rep.ratio_cbrt = static_cast<double>(rep.survivor_count) / std::cbrt(nd);
    rep.ratio_sqrt = static_cast<double>(rep.survivor_count) / std::sqrt(nd);
    rep.elapsed_s = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<SweepRow> sweep(const std::vector<uint64_t>& ns,
                            const PlanStrategy& strategy, double tol,
                            uint64_t x_override) {
    std::vector<SweepRow> rows;
    rows.reserve(ns.size());
    for (uint64_t n : ns) {
        SweepRow row;
        row.n = n;
        try {
            row.report = run_pipeline(n, strategy, tol, x_override);
        } catch (const std::exception& ex) {
            row.error = ex.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace sievelab
