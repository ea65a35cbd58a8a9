#include "sievelab/tuple_counts.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "sievelab/pairwise.hpp"
#include "sievelab/phase.hpp"
#include "sievelab/rational.hpp"
#include "sievelab/rng.hpp"

namespace sievelab {

using u128 = unsigned __int128;

std::string RationalExponent::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

BigRational reciprocal_sum(const std::vector<uint64_t>& xs) {
    BigRational s(0);
    for (uint64_t v : xs) {
        if (v == 0) throw std::invalid_argument("reciprocal_sum: zero term");
        mpq_class t(1);
        t /= mpq_class(mpz_class(static_cast<unsigned long>(v)));
        s += t;
    }
    return s;
}

std::string rational_str(const BigRational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpz_class ipow(const mpz_class& base, uint64_t e) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return out;
}

namespace {

struct HalfSum {
    uint64_t num, den; // num/den with den = product of the half's elements
};

inline bool hs_less(const HalfSum& a, const HalfSum& b) {
    return static_cast<u128>(a.num) * b.den < static_cast<u128>(b.num) * a.den;
}

inline bool hs_eq(const HalfSum& a, const HalfSum& b) {
    return static_cast<u128>(a.num) * b.den == static_cast<u128>(b.num) * a.den;
}

// x^r as u128 with an overflow clamp at `cap`.
u128 checked_pow(uint64_t x, uint32_t r, u128 cap) {
    u128 v = 1;
    for (uint32_t i = 0; i < r; ++i) {
        if (v > cap / (x ? x : 1)) return cap + 1;
        v *= x;
    }
    return v;
}

uint64_t factorial(uint32_t n) {
    uint64_t f = 1;
    for (uint32_t i = 2; i <= n; ++i) f *= i;
    return f;
}

// Ordered 2r-tuples whose second half permutes the first: sum over multisets
// m of [X, 2X)^r of (r! / prod of multiplicity factorials)^2.
uint64_t diagonal_by_multisets(uint64_t x, uint32_t r) {
    uint64_t rfact = factorial(r);
    uint64_t total = 0;
    // Odometer over nondecreasing tuples.
    std::vector<uint64_t> v(r, x);
    while (true) {
        uint64_t perms = rfact;
        uint64_t runlen = 1;
        for (uint32_t i = 1; i < r; ++i) {
            if (v[i] == v[i - 1]) {
                ++runlen;
                perms /= runlen;
            } else {
                runlen = 1;
            }
        }
        total += perms * perms;
        uint32_t i = r;
        while (i > 0 && v[i - 1] == 2 * x - 1) --i;
        if (i == 0) break;
        ++v[i - 1];
        for (uint32_t j = i; j < r; ++j) v[j] = v[i - 1];
    }
    return total;
}

// Exact closeness predicate on a nonnegative half-sum difference d_num/d_den:
// d <= 1/x^e, i.e. d_num^q * x^p <= d_den^q for e = p/q.
struct Threshold {
    uint64_t x;
    RationalExponent e;
    bool pure_int128;
    u128 xe; // x^e when pure_int128

    Threshold(uint64_t x_, RationalExponent e_, uint64_t num_max, uint64_t den_max)
        : x(x_), e(e_), pure_int128(false), xe(0) {
        if (e.is_integer()) {
            u128 cap = ~u128(0);
            u128 p = checked_pow(x, static_cast<uint32_t>(e.num), cap >> 1);
            // All products in close() must fit in 128 bits:
            // (num_max*den_max) * x^e and den_max^2.
            mpz_class worst = mpz_class(num_max) * den_max * ipow(x, e.num);
            if (p <= (cap >> 1) && mpz_sizeinbase(worst.get_mpz_t(), 2) <= 126) {
                pure_int128 = true;
                xe = p;
            }
        }
    }

    bool close(const HalfSum& lo, const HalfSum& hi) const {
        u128 a = static_cast<u128>(hi.num) * lo.den;
        u128 b = static_cast<u128>(lo.num) * hi.den;
        u128 dnum = a - b; // callers guarantee hi >= lo
        u128 dden = static_cast<u128>(lo.den) * hi.den;
        if (pure_int128) return dnum * xe <= dden;
        mpz_class zn, zd;
        mpz_import(zn.get_mpz_t(), 1, 1, sizeof(dnum), 0, 0, &dnum);
        mpz_import(zd.get_mpz_t(), 1, 1, sizeof(dden), 0, 0, &dden);
        return ipow(zn, e.den) * ipow(mpz_class(x), e.num) <= ipow(zd, e.den);
    }
};

void check_params(const TupleCountParams& p, RationalExponent& e) {
    if (p.x < 1) throw std::invalid_argument("count_close_tuples: x must be >= 1");
    if (p.r < 1) throw std::invalid_argument("count_close_tuples: r must be >= 1");
    if (p.r > 16) throw std::invalid_argument("count_close_tuples: r too large");
    e = p.e;
    if (e.num == 0) e = RationalExponent{p.r + uint64_t(1), 1};
    if (e.den == 0) throw std::invalid_argument("count_close_tuples: e denominator is zero");
    if (e.num > 1024 || e.den > 64)
        throw std::invalid_argument("count_close_tuples: exponent out of range");
}

TupleCountReport count_impl(const TupleCountParams& params, bool parallel) {
    auto t0 = std::chrono::steady_clock::now();
    RationalExponent e;
    check_params(params, e);
    uint64_t x = params.x;
    uint32_t r = params.r;

    u128 n_half128 = checked_pow(x, r, u128(params.max_half_sums) + 1);
    if (n_half128 > params.max_half_sums)
        throw ResourceCapError("count_close_tuples: X^r exceeds the half-sum cap");
    auto n = static_cast<uint64_t>(n_half128);

    // Width guards for the fixed-width representation: num <= r*(2X-1)^(r-1),
    // den <= (2X-1)^r, both below 2^63.
    u128 den_max = checked_pow(2 * x - 1, r, ~u128(0) >> 1);
    u128 num_max = r * checked_pow(2 * x - 1, r - 1, ~u128(0) >> 8);
    if (den_max >= (u128(1) << 63) || num_max >= (u128(1) << 63))
        throw ResourceCapError("count_close_tuples: operands exceed the fixed-width backend");

    std::vector<HalfSum> sums(n);
#pragma omp parallel for schedule(static) if (parallel)
    for (int64_t idx = 0; idx < static_cast<int64_t>(n); ++idx) {
        uint64_t rest = static_cast<uint64_t>(idx);
        uint64_t num = 0, den = 1;
        for (uint32_t j = 0; j < r; ++j) {
            uint64_t v = x + rest % x;
            rest /= x;
            num = num * v + den;
            den *= v;
        }
        sums[idx] = HalfSum{num, den};
    }

    std::sort(sums.begin(), sums.end(), hs_less);

    TupleCountReport rep;
    rep.x = x;
    rep.r = r;
    rep.e = e;
    rep.half_sums = n;
    rep.backend = "int128";

    // Equal-value runs.
    for (uint64_t i = 0; i < n;) {
        uint64_t j = i + 1;
        while (j < n && hs_eq(sums[i], sums[j])) ++j;
        uint64_t m = j - i;
        rep.equal_pair_count += m * m;
        ++rep.distinct_sums;
        i = j;
    }

    Threshold thr(x, e, static_cast<uint64_t>(num_max), static_cast<uint64_t>(den_max));
    if (!thr.pure_int128) rep.backend = "bigint";

    uint64_t count = 0;
    if (!parallel) {
        // Two-pointer window; lo and hi are monotone in i.
        uint64_t lo = 0, hi = 0;
        for (uint64_t i = 0; i < n; ++i) {
            while (!thr.close(sums[lo], sums[i])) ++lo;
            if (hi < i) hi = i;
            while (hi + 1 < n && thr.close(sums[i], sums[hi + 1])) ++hi;
            count += hi - lo + 1;
        }
    } else {
#pragma omp parallel for schedule(static) reduction(+ : count)
        for (int64_t i = 0; i < static_cast<int64_t>(n); ++i) {
            const HalfSum& s = sums[static_cast<uint64_t>(i)];
            // First index already within the cutoff below s (closeness is
            // monotone along the sorted order).
            uint64_t lo = 0, h = static_cast<uint64_t>(i);
            while (lo < h) {
                uint64_t mid = lo + (h - lo) / 2;
                if (thr.close(sums[mid], s)) h = mid; else lo = mid + 1;
            }
            // Last index still within the cutoff above s.
            uint64_t hi = static_cast<uint64_t>(i), h2 = n - 1;
            while (hi < h2) {
                uint64_t mid = hi + (h2 - hi + 1) / 2;
                if (thr.close(s, sums[mid])) hi = mid; else h2 = mid - 1;
            }
            count += hi - lo + 1;
        }
    }
    rep.count = count;
    rep.diagonal_count = diagonal_by_multisets(x, r);
    rep.elapsed_s = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace

TupleCountReport count_close_tuples(const TupleCountParams& params) {
    return count_impl(params, true);
}

TupleCountReport count_close_tuples_serial(const TupleCountParams& params) {
    return count_impl(params, false);
}

uint64_t brute_force_close_tuples(uint64_t x, uint32_t r, RationalExponent e) {
    if (x < 1 || r < 1) throw std::invalid_argument("brute_force_close_tuples: bad x or r");
    if (e.num == 0) e = RationalExponent{r + uint64_t(1), 1};
    u128 total = checked_pow(x, 2 * r, u128(100'000'000));
    if (total > u128(100'000'000))
        throw ResourceCapError("brute_force_close_tuples: X^(2r) exceeds 10^8");

    // |d| <= 1/x^e  <=>  |num d|^q * x^p <= (den d)^q.
    mpz_class xp = ipow(mpz_class(static_cast<unsigned long>(x)), e.num);

    uint64_t count = 0;
    std::vector<uint64_t> tup(2 * r, x);
    while (true) {
        mpq_class d(0);
        for (uint32_t i = 0; i < 2 * r; ++i) {
            mpq_class t(1, 1);
            t /= mpq_class(mpz_class(static_cast<unsigned long>(tup[i])));
            if (i < r) d += t; else d -= t;
        }
        mpz_class dn = abs(d.get_num());
        mpz_class dd = d.get_den();
        if (ipow(dn, e.den) * xp <= ipow(dd, e.den)) ++count;

        uint32_t i = 2 * r;
        while (i > 0 && tup[i - 1] == 2 * x - 1) --i;
        if (i == 0) break;
        ++tup[i - 1];
        for (uint32_t j = i; j < 2 * r; ++j) tup[j] = x;
    }
    return count;
}

double exponent_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw std::invalid_argument("exponent_fit: need at least 2 points");
    double mx = 0, my = 0;
    for (const auto& [x, y] : points) {
        if (!(x > 0) || !(y > 0))
            throw std::invalid_argument("exponent_fit: points must be positive");
        mx += std::log(x);
        my += std::log(y);
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        double dx = std::log(x) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y) - my);
    }
    if (sxx == 0) throw std::invalid_argument("exponent_fit: all x equal");
    return sxy / sxx;
}

namespace {

std::complex<double> expsum_impl(uint64_t x, const mpz_class& xi, bool parallel) {
    if (x < 1) throw std::invalid_argument("reciprocal_expsum: x must be >= 1");
    if (x > (uint64_t(1) << 31))
        throw ResourceCapError("reciprocal_expsum: x exceeds the term budget");
    std::vector<std::complex<double>> terms(x);
#pragma omp parallel for schedule(static) if (parallel)
    for (int64_t i = 0; i < static_cast<int64_t>(x); ++i) {
        uint64_t v = x + static_cast<uint64_t>(i);
        // Exact phase: (xi mod v) / v in [0, 1).
        unsigned long rem = mpz_fdiv_ui(xi.get_mpz_t(), static_cast<unsigned long>(v));
        terms[i] = unit_e(static_cast<double>(rem) / static_cast<double>(v));
    }
    return pairwise_sum(terms);
}

} // namespace

std::complex<double> reciprocal_expsum(uint64_t x, const mpz_class& xi) {
    return expsum_impl(x, xi, true);
}

std::complex<double> reciprocal_expsum_serial(uint64_t x, const mpz_class& xi) {
    return expsum_impl(x, xi, false);
}

namespace {

// floor(2^lg) as an exact integer, for lg >= 0. The 53-bit mantissa path
// keeps the draw deterministic for arbitrarily large results.
mpz_class exp2_floor(double lg) {
    if (lg < 52) return mpz_class(std::floor(std::exp2(lg)));
    double ti = std::floor(lg);
    double tf = lg - ti;
    auto m = static_cast<unsigned long>(std::llround(std::exp2(tf) * 0x1p52));
    mpz_class out(m);
    mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(),
                 static_cast<unsigned long>(ti) - 52);
    return out;
}

SupScanResult sup_scan_impl(uint64_t x, uint32_t r, uint64_t samples,
                            uint64_t seed, bool parallel) {
    if (x < 1) throw std::invalid_argument("sup_scan: x must be >= 1");
    if (r < 1 || r > 16) throw std::invalid_argument("sup_scan: r out of range");
    if (samples < 1) throw std::invalid_argument("sup_scan: need samples >= 1");
    if (samples > 10'000'000) throw std::invalid_argument("sup_scan: too many samples");

    mpz_class lo = ipow(mpz_class(static_cast<unsigned long>(x)), 2);
    mpz_class hi = ipow(mpz_class(static_cast<unsigned long>(x)), r + uint64_t(1));

    // All draws happen up front on one stream: the xi sequence is a function
    // of the seed alone.
    double lg_lo = 2.0 * std::log2(static_cast<double>(x));
    double lg_hi = static_cast<double>(r + 1) * std::log2(static_cast<double>(x));
    DetRng rng(seed);
    std::vector<mpz_class> xis(samples);
    for (uint64_t i = 0; i < samples; ++i) {
        double t = rng.unit();
        mpz_class xi = exp2_floor(lg_lo + t * (lg_hi - lg_lo));
        if (xi < lo) xi = lo;
        if (xi > hi) xi = hi;
        xis[i] = xi;
    }

    double best = -1.0;
    uint64_t best_i = 0;
#pragma omp parallel if (parallel)
    {
        double lbest = -1.0;
        uint64_t lbest_i = 0;
#pragma omp for schedule(dynamic, 8) nowait
        for (int64_t i = 0; i < static_cast<int64_t>(samples); ++i) {
            double mag = std::abs(expsum_impl(x, xis[static_cast<uint64_t>(i)], false));
            if (mag > lbest ||
                (mag == lbest && static_cast<uint64_t>(i) < lbest_i)) {
                lbest = mag;
                lbest_i = static_cast<uint64_t>(i);
            }
        }
#pragma omp critical
        {
            if (lbest > best || (lbest == best && lbest_i < best_i)) {
                best = lbest;
                best_i = lbest_i;
            }
        }
    }

    SupScanResult res;
    res.x = x;
    res.r = r;
    res.samples = samples;
    res.seed = seed;
    res.max_magnitude = best;
    res.max_normalized = best / std::sqrt(static_cast<double>(x));
    res.argmax_xi = xis[best_i];
    return res;
}

} // namespace

SupScanResult sup_scan(uint64_t x, uint32_t r, uint64_t samples, uint64_t seed) {
    return sup_scan_impl(x, r, samples, seed, true);
}

SupScanResult sup_scan_serial(uint64_t x, uint32_t r, uint64_t samples,
                              uint64_t seed) {
    return sup_scan_impl(x, r, samples, seed, false);
}

} // namespace sievelab
