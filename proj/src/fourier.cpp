#include "sievelab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "sievelab/pairwise.hpp"

namespace sievelab {

std::vector<uint64_t> residue_histogram(const SurvivorSet& a, uint32_t p) {
    std::vector<uint64_t> counts(p, 0);
    a.for_each([&](uint64_t v) { ++counts[v % p]; });
    return counts;
}

namespace {

std::complex<double> exp_sum_from_histogram(const std::vector<uint64_t>& counts,
                                            uint32_t p, uint32_t k,
                                            bool parallel) {
    std::vector<std::complex<double>> terms(p);
#pragma omp parallel for schedule(static) if (parallel && p > 4096)
    for (int64_t r = 0; r < static_cast<int64_t>(p); ++r) {
        uint64_t rot = (static_cast<uint64_t>(k) * static_cast<uint64_t>(r)) % p;
        terms[r] = static_cast<double>(counts[r]) *
                   unit_e(static_cast<double>(rot) / static_cast<double>(p));
    }
    return pairwise_sum(terms);
}

} // namespace

std::complex<double> residue_exp_sum(const SurvivorSet& a, uint32_t p, uint32_t k) {
    return exp_sum_from_histogram(residue_histogram(a, p), p, k, true);
}

std::complex<double> residue_exp_sum_serial(const SurvivorSet& a, uint32_t p,
                                            uint32_t k) {
    return exp_sum_from_histogram(residue_histogram(a, p), p, k, false);
}

LemmaReport lemma_check(const SievePlan& plan, const SurvivorSet& a, double tol) {
    if (tol < 0) throw std::invalid_argument("lemma_check: tol must be >= 0");
    LemmaReport rep;
    rep.n = plan.n;
    rep.survivor_count = a.cardinality();
    rep.tol = tol;

    std::vector<const ResidueSet*> interval_entries;
    for (const auto& rs : plan.entries) {
        if (rs.kind == ResidueSet::Kind::interval)
            interval_entries.push_back(&rs);
        else
            ++rep.skipped_explicit;
    }

    rep.primes.resize(interval_entries.size());
    double card = static_cast<double>(rep.survivor_count);
#pragma omp parallel for schedule(dynamic)
    for (int64_t i = 0; i < static_cast<int64_t>(interval_entries.size()); ++i) {
        uint32_t p = interval_entries[i]->p;
        LemmaPrimeRecord rec;
        rec.p = p;
        auto counts = residue_histogram(a, p);
        rec.s1_mag = std::abs(exp_sum_from_histogram(counts, p, 1, false));
        rec.s2_mag = std::abs(exp_sum_from_histogram(counts, p, 2, false));
        rec.lhs = 2.0 * rec.s1_mag + rec.s2_mag;
        rec.pass = rec.lhs >= card - tol;
        rec.third_ok = std::max(rec.s1_mag, rec.s2_mag) >= card / 3.0 - tol;
        rep.primes[i] = rec;
    }
    for (const auto& rec : rep.primes)
        rep.all_pass = rep.all_pass && rec.pass && rec.third_ok;
    return rep;
}

double cosine_expression(double theta) {
    return 1.0 - 2.0 * std::cos(theta) + std::cos(2.0 * theta);
}

double cosine_selftest(unsigned grid_points) {
    if (grid_points < 2)
        throw std::invalid_argument("cosine_selftest: need at least 2 grid points");
    double lo = -std::numbers::pi / 2, hi = std::numbers::pi / 2;
    double worst = -4.0;
    for (unsigned i = 0; i < grid_points; ++i) {
        double theta = lo + (hi - lo) * static_cast<double>(i) /
                                static_cast<double>(grid_points - 1);
        worst = std::max(worst, cosine_expression(theta));
    }
    return worst;
}

SeparatedPoints farey_points(uint32_t q) {
    if (q < 1) throw std::invalid_argument("farey_points: q must be >= 1");
    SeparatedPoints pts;
    for (uint32_t p = 1; p <= q; ++p)
        for (uint32_t a = 0; a < p; ++a)
            if (std::gcd(a, p) == 1)
                pts.points.push_back(static_cast<double>(a) / p);
    std::sort(pts.points.begin(), pts.points.end());
    pts.delta = 1.0 / (static_cast<double>(q) * static_cast<double>(q));
    return pts;
}

LargeSieveResult large_sieve_check(const std::vector<std::complex<double>>& a,
                                   const SeparatedPoints& pts) {
    if (pts.points.empty())
        throw std::invalid_argument("large_sieve_check: no evaluation points");
    if (!(pts.delta > 0.0) || pts.delta > 1.0)
        throw std::invalid_argument("large_sieve_check: delta must lie in (0, 1]");
    bool nonzero = false;
    for (const auto& v : a) nonzero = nonzero || v != std::complex<double>{};
    if (!nonzero)
        throw std::invalid_argument("large_sieve_check: sequence is all zero");

    // Separation on the circle, including the wraparound gap. A hair of
    // slack absorbs the floating representation of the points themselves.
    std::vector<double> sorted = pts.points;
    std::sort(sorted.begin(), sorted.end());
    double slack = pts.delta * 1e-12;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        if (sorted[i + 1] - sorted[i] < pts.delta - slack)
            throw SeparationViolation("large_sieve_check: points closer than delta");
    if (sorted.size() >= 2) {
        double wrap = sorted.front() + 1.0 - sorted.back();
        if (wrap < pts.delta - slack)
            throw SeparationViolation("large_sieve_check: points closer than delta");
    }

    int64_t npts = static_cast<int64_t>(pts.points.size());
    uint64_t n = a.size();
    std::vector<double> sq(pts.points.size());
#pragma omp parallel for schedule(dynamic)
    for (int64_t i = 0; i < npts; ++i) {
        double theta = pts.points[i];
        std::vector<std::complex<double>> terms(n);
        std::complex<double> cur = unit_e(theta); // n = 1
        std::complex<double> w = cur;
        for (uint64_t j = 0; j < n; ++j) {
            // Resync the rotation periodically so roundoff cannot creep in;
            // phases stay accurate to ~1e-13 over any length.
            if ((j & 255) == 0)
                cur = unit_e(std::fmod(static_cast<double>(j + 1) * theta, 1.0));
            terms[j] = a[j] * cur;
            cur *= w;
        }
        sq[i] = std::norm(pairwise_sum(terms));
    }

    std::vector<double> asq(n);
    for (uint64_t j = 0; j < n; ++j) asq[j] = std::norm(a[j]);

    LargeSieveResult res;
    res.lhs = pairwise_sum(sq);
    res.bound = (static_cast<double>(n) + 1.0 / pts.delta) * pairwise_sum(asq);
    res.ratio = res.lhs / res.bound;
    return res;
}

} // namespace sievelab
