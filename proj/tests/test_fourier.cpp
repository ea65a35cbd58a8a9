#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "helpers.hpp"

#include <complex>
#include <numeric>

#include "sievelab/fourier.hpp"
#include "sievelab/plan.hpp"
#include "sievelab/rng.hpp"
#include "sievelab/sieve.hpp"
#include "sievelab/threads.hpp"

using namespace sievelab;
using namespace testutil;

namespace {

// Plan with one explicit residue set per listed prime.
SievePlan explicit_plan(uint64_t n,
                        std::vector<std::pair<uint32_t, std::vector<uint32_t>>> sets) {
    SievePlan plan;
    plan.n = n;
    for (auto& [p, elems] : sets) {
        ResidueSet s;
        s.p = p;
        s.kind = ResidueSet::Kind::explicit_set;
        s.elements = std::move(elems);
        plan.entries.push_back(std::move(s));
    }
    return plan;
}

// Direct member-by-member reference sum in extended precision.
std::complex<double> direct_sum(const SurvivorSet& a, uint32_t p, uint32_t k) {
    std::complex<long double> acc{0, 0};
    a.for_each([&](uint64_t v) {
        acc += unit_e_ld(static_cast<long double>(k % p * (v % p) % p) / p);
    });
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

} // namespace

TEST_CASE("pinned residue exponential sums") {
    // A = {1, 2}: e(1/3) + e(2/3) = -1.
    SievePlan empty;
    empty.n = 2;
    auto two = sieve(empty);
    auto s = residue_exp_sum(two, 3, 1);
    CHECK(s.real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(s.imag()) < 1e-12);

    // A = {3, 6, 9}: every term is e(0), so the sum is exactly 3.
    auto mult3 = sieve(explicit_plan(9, {{3, {1, 2}}}));
    CHECK(mult3.members() == std::vector<uint64_t>{3, 6, 9});
    auto t = residue_exp_sum(mult3, 3, 1);
    CHECK(t.real() == 3.0);
    CHECK(t.imag() == 0.0);

    // Survivors of the tiny pinned sieve: histogram (3, 0, 3) mod 3, so
    // S_1 = 3 + 3 e(2/3), of magnitude 3.
    auto a = sieve(make_interval_plan(9, PlanStrategy::fixed_start(1, 3)));
    auto hist = residue_histogram(a, 3);
    CHECK(hist == std::vector<uint64_t>{3, 0, 3});
    auto s1 = residue_exp_sum(a, 3, 1);
    auto want = 3.0 + 3.0 * std::complex<double>(std::cos(4 * M_PI / 3),
                                                 std::sin(4 * M_PI / 3));
    CHECK(std::abs(s1 - want) < 1e-12);
    CHECK(std::abs(s1) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("residue histogram counts every class") {
    auto a = sieve(make_plan(5000, PlanStrategy::random_start(4)));
    for (uint32_t p : {3u, 7u, 10u}) {
        auto hist = residue_histogram(a, p);
        REQUIRE(hist.size() == p);
        std::vector<uint64_t> want(p, 0);
        a.for_each([&](uint64_t v) { ++want[v % p]; });
        CHECK(hist == want);
        CHECK(std::accumulate(hist.begin(), hist.end(), uint64_t(0)) ==
              a.cardinality());
    }
}

TEST_CASE("residue sums match direct member-by-member summation") {
    // Only a few primes sieve, so plenty survives.
    DetRng rng(31);
    SievePlan plan;
    plan.n = 5000;
    for (uint32_t p : {3u, 7u, 13u}) {
        ResidueSet s;
        s.p = p;
        s.kind = ResidueSet::Kind::interval;
        s.start = static_cast<uint32_t>(rng.below(p));
        s.length = (p - 1) / 2;
        plan.entries.push_back(s);
    }
    auto a = sieve(plan);
    REQUIRE(a.cardinality() > 500);
    for (uint32_t p : {3u, 7u, 13u, 101u}) {
        for (uint32_t k : {1u, 2u, p - 1}) {
            auto got = residue_exp_sum(a, p, k);
            auto want = direct_sum(a, p, k);
            CHECK(std::abs(got - want) <=
                  1e-9 * std::max(1.0, std::abs(want)));
            CHECK(std::abs(got) <= static_cast<double>(a.cardinality()) + 1e-9);
        }
    }
}

TEST_CASE("classes with equal multiplicity regroup exactly") {
    // A = everything ≡ 1 or 3 (mod 7) in [1, 84]: multiplicity 12 each, so
    // S_k = 12 (e(k/7) + e(3k/7)).
    auto a = sieve(explicit_plan(84, {{7, {0, 2, 4, 5, 6}}}));
    CHECK(a.cardinality() == 24);
    for (uint32_t k = 1; k < 7; ++k) {
        auto got = residue_exp_sum(a, 7, k);
        std::complex<long double> want =
            unit_e_ld(static_cast<long double>(k) / 7) +
            unit_e_ld(static_cast<long double>(3 * k % 7) / 7);
        want *= 12.0L;
        CHECK(std::abs(got - std::complex<double>(
                                 static_cast<double>(want.real()),
                                 static_cast<double>(want.imag()))) < 1e-12 * 24);
    }
}

TEST_CASE("parallel residue sum equals the serial reference bit for bit") {
    // p above the parallel threshold, set of ~33k members.
    auto a = sieve(explicit_plan(100000, {{3, {1, 2}}}));
    CHECK(a.cardinality() == 33333);
    for (uint32_t k : {1u, 5u, 9972u}) {
        auto par = residue_exp_sum(a, 9973, k);
        auto ser = residue_exp_sum_serial(a, 9973, k);
        CHECK(par.real() == ser.real());
        CHECK(par.imag() == ser.imag());
    }
}

TEST_CASE("pinned two-sum inequality on the tiny sieve") {
    auto plan = make_interval_plan(9, PlanStrategy::fixed_start(1, 3));
    auto a = sieve(plan);
    auto rep = lemma_check(plan, a);
    CHECK(rep.n == 9);
    CHECK(rep.survivor_count == 6);
    CHECK(rep.all_pass);
    CHECK(rep.skipped_explicit == 0);
    REQUIRE(rep.primes.size() == 1);
    const auto& rec = rep.primes[0];
    CHECK(rec.p == 3);
    CHECK(rec.s1_mag == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rec.s2_mag == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rec.lhs == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(rec.pass);
    CHECK(rec.third_ok);
}

TEST_CASE("two-sum inequality holds across plan families") {
    for (uint64_t n : {1000ull, 4000ull}) {
        auto plan = make_plan(n, PlanStrategy::middle_half());
        auto a = sieve(plan);
        auto rep = lemma_check(plan, a);
        CHECK(rep.all_pass);
        CHECK(rep.primes.size() == plan.entries.size());
        for (const auto& rec : rep.primes) {
            CHECK(rec.pass);
            CHECK(rec.third_ok);
            CHECK(rec.lhs >= static_cast<double>(a.cardinality()) - 1e-6);
            // Record values agree with a fresh evaluation.
            CHECK(rec.s1_mag == std::abs(residue_exp_sum(a, rec.p, 1)));
            CHECK(rec.s2_mag == std::abs(residue_exp_sum(a, rec.p, 2)));
        }
    }
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        auto plan = make_plan(1000, PlanStrategy::random_start(seed));
        auto rep = lemma_check(plan, sieve(plan));
        CHECK(rep.all_pass);
    }
}

TEST_CASE("two-sum check on an empty survivor set is vacuous") {
    auto plan = make_plan(10000, PlanStrategy::middle_half());
    auto a = sieve(plan);
    REQUIRE(a.cardinality() == 0);
    auto rep = lemma_check(plan, a);
    CHECK(rep.survivor_count == 0);
    CHECK(rep.all_pass);
    for (const auto& rec : rep.primes) CHECK(rec.pass);
}

TEST_CASE("explicit residue sets are reported as skipped") {
    auto plan = make_qnr_plan(100);
    auto rep = lemma_check(plan, sieve(plan));
    CHECK(rep.skipped_explicit == 3);
    CHECK(rep.primes.empty());
    CHECK(rep.all_pass);
    CHECK_THROWS_AS(lemma_check(plan, sieve(plan), -1e-9), std::invalid_argument);
}

TEST_CASE("cosine ingredient stays nonpositive on the half circle") {
    CHECK(cosine_expression(0.0) == 0.0);
    CHECK(std::abs(cosine_expression(M_PI / 2)) < 1e-15);
    CHECK(std::abs(cosine_expression(-M_PI / 2)) < 1e-15);
    CHECK(cosine_expression(M_PI / 3) == doctest::Approx(-0.5).epsilon(1e-15));
    double st = cosine_selftest();
    CHECK(st <= 1e-12);
    CHECK(st >= -1e-6);
    CHECK_THROWS_AS(cosine_selftest(1), std::invalid_argument);
}

TEST_CASE("farey points are reduced fractions with the promised gap") {
    auto f1 = farey_points(1);
    CHECK(f1.points == std::vector<double>{0.0});
    CHECK(f1.delta == 1.0);

    auto f2 = farey_points(2);
    CHECK(f2.points == std::vector<double>{0.0, 0.5});
    CHECK(f2.delta == 0.25);

    auto f3 = farey_points(3);
    REQUIRE(f3.points.size() == 4);
    CHECK(f3.points[1] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(f3.points[2] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f3.points[3] == doctest::Approx(2.0 / 3).epsilon(1e-15));

    CHECK(farey_points(5).points.size() == 10);
    CHECK(farey_points(10).points.size() == 32);

    for (uint32_t q : {4u, 7u, 23u, 50u}) {
        auto f = farey_points(q);
        // Totient-sum count, via gcd.
        std::size_t want = 1;
        for (uint32_t p = 2; p <= q; ++p)
            for (uint32_t a = 1; a < p; ++a)
                if (gcd_u64(a, p) == 1) ++want;
        CHECK(f.points.size() == want);
        CHECK(f.delta == doctest::Approx(1.0 / (double(q) * q)).epsilon(1e-15));
        for (std::size_t i = 0; i < f.points.size(); ++i) {
            CHECK(f.points[i] >= 0.0);
            CHECK(f.points[i] < 1.0);
            if (i > 0) CHECK(f.points[i] - f.points[i - 1] >= f.delta - 1e-15);
        }
        CHECK(1.0 - f.points.back() + f.points.front() >= f.delta - 1e-15);
    }
    CHECK_THROWS_AS(farey_points(0), std::invalid_argument);
}

TEST_CASE("pinned energy sum at a single frequency") {
    std::vector<std::complex<double>> a(4, {1.0, 0.0});
    SeparatedPoints pts;
    pts.points = {0.0};
    pts.delta = 0.5;
    auto r = large_sieve_check(a, pts);
    CHECK(r.lhs == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(r.bound == doctest::Approx(24.0).epsilon(1e-12));
    CHECK(r.ratio == doctest::Approx(2.0 / 3).epsilon(1e-12));
}

TEST_CASE("unit coefficient spreads its energy evenly") {
    std::vector<std::complex<double>> a(7, {0.0, 0.0});
    a[0] = {1.0, 0.0};
    auto pts = farey_points(5);
    auto r = large_sieve_check(a, pts);
    CHECK(r.lhs == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(r.bound == doctest::Approx((7.0 + 25.0) * 1.0).epsilon(1e-12));
    CHECK(r.ratio <= 1.0 + 1e-9);
}

TEST_CASE("random sequences never exceed the separated-point bound") {
    DetRng rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        uint64_t n = 1 + rng.below(400);
        uint32_t q = 1 + static_cast<uint32_t>(rng.below(12));
        std::vector<std::complex<double>> a(n);
        for (auto& v : a) {
            double re = rng.symmetric(), im = rng.symmetric();
            v = {re, im};
        }
        auto r = large_sieve_check(a, farey_points(q));
        CHECK(r.ratio <= 1.0 + 1e-9);
        CHECK(r.lhs >= 0.0);
    }
}

TEST_CASE("energy check rejects malformed input") {
    std::vector<std::complex<double>> ones(4, {1.0, 0.0});
    std::vector<std::complex<double>> zeros(4, {0.0, 0.0});
    SeparatedPoints pts;
    pts.points = {0.0};
    pts.delta = 0.5;

    CHECK_THROWS_AS(large_sieve_check(zeros, pts), std::invalid_argument);
    CHECK_THROWS_AS(large_sieve_check({}, pts), std::invalid_argument);

    SeparatedPoints none;
    none.points = {};
    CHECK_THROWS_AS(large_sieve_check(ones, none), std::invalid_argument);

    SeparatedPoints bad_delta;
    bad_delta.points = {0.0};
    bad_delta.delta = 0.0;
    CHECK_THROWS_AS(large_sieve_check(ones, bad_delta), std::invalid_argument);
    bad_delta.delta = 2.0;
    CHECK_THROWS_AS(large_sieve_check(ones, bad_delta), std::invalid_argument);

    SeparatedPoints close;
    close.points = {0.1, 0.1 + 1e-9};
    close.delta = 0.25;
    CHECK_THROWS_AS(large_sieve_check(ones, close), SeparationViolation);

    // Separation is measured around the circle, so 0.999 and 0.0 collide.
    SeparatedPoints wrap;
    wrap.points = {0.0, 0.999};
    wrap.delta = 0.01;
    CHECK_THROWS_AS(large_sieve_check(ones, wrap), SeparationViolation);
}
