#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "helpers.hpp"

#include <cmath>

#include "sievelab/majorant.hpp"
#include "sievelab/report.hpp"
#include "sievelab/rng.hpp"
#include "sievelab/threads.hpp"

using namespace sievelab;
using namespace testutil;

TEST_CASE("the one-sided majorant hits sgn exactly at integers") {
    const uint32_t m = 10000;
    CHECK(beurling_b(0.0, m) == 1.0);
    for (int n = 1; n <= 30; ++n) {
        CHECK(beurling_b(static_cast<double>(n), m) == 1.0);
        CHECK(beurling_b(static_cast<double>(-n), m) == -1.0);
    }
    CHECK_THROWS_AS(beurling_b(0.5, 0), std::invalid_argument);
}

TEST_CASE("the majorant dominates sgn everywhere sampled") {
    const uint32_t m = 2000;
    for (int i = 0; i <= 2000; ++i) {
        double x = -60.0 + 0.06 * i;
        CHECK(beurling_b(x, m) >= (x >= 0 ? 1.0 : -1.0) - 1e-8);
    }
    DetRng rng(13);
    for (int i = 0; i < 50; ++i) {
        double x = 40.0 * rng.symmetric();
        CHECK(beurling_b(x, 10000) >= (x >= 0 ? 1.0 : -1.0) - 1e-8);
    }
}

TEST_CASE("truncation differences stay inside the documented envelope") {
    CHECK(beurling_tail_bound(7.0, 100) == 0.5 * 8.0 / 10000.0);
    for (double x : {0.5, 7.5, -3.3, 12.25}) {
        for (uint32_t m : {16u, 64u, 256u, 1024u}) {
            double lo = beurling_b(x, m);
            double hi = beurling_b(x, 2 * m);
            CHECK(std::abs(lo - hi) <=
                  beurling_tail_bound(x, m) + beurling_tail_bound(x, 2 * m));
        }
        CHECK(std::abs(beurling_b(x, 64) - beurling_b(x, 4096)) <=
              beurling_tail_bound(x, 64) + beurling_tail_bound(x, 4096));
    }
}

TEST_CASE("interval majorant covers the interval") {
    MajorantSpec spec;
    spec.half_width = 10;
    spec.band_limit = 0.5;
    spec.truncation = 2000;

    // At the endpoints both series arguments are integers: psi = 1 exactly.
    CHECK(selberg_majorant(spec, 10.0) == 1.0);
    CHECK(selberg_majorant(spec, -10.0) == 1.0);

    // The truncation floor for M = 2000 at arguments up to 10 is ~1.4e-6.
    CHECK(selberg_majorant(spec, 0.0) >= 1.0 - 1e-5);
    CHECK(majorant_grid_min(spec, 2001) >= 1.0 - 1e-5);

    // Symmetric in t.
    for (double t : {0.3, 4.7, 9.99, 17.2}) {
        CHECK(selberg_majorant(spec, t) == selberg_majorant(spec, -t));
    }

    // Beyond the interval the majorant never dips below the truncation
    // floor, and past the rolloff scale 1/delta it is nearly gone.
    for (int i = 0; i <= 400; ++i) {
        double t = 10.0 + 0.1 * i;
        double v = selberg_majorant(spec, t);
        CHECK(v >= -1e-6);
        CHECK(v <= 1.2);
        if (t >= 14.0) CHECK(v <= 0.1);
    }
}

TEST_CASE("skirt value is frozen") {
    MajorantSpec spec;
    spec.half_width = 10;
    spec.band_limit = 1.0 / (2000.0 * M_PI);
    spec.truncation = 10000;
    double skirt = selberg_majorant(spec, 10.0 + 5.0 / spec.band_limit);
    CHECK(skirt >= -1e-6);
    CHECK(std::abs(skirt) <= 0.05);
    golden_check("majorant_skirt.txt", num_str(skirt) + "\n");
}

TEST_CASE("mass matches the closed form") {
    MajorantSpec a;
    a.half_width = 10;
    a.band_limit = 1.0;
    a.truncation = 2000;
    auto ra = majorant_l1(a);
    CHECK(ra.closed_form == 21.0);
    CHECK(ra.rel_err <= 0.02);
    CHECK(ra.numeric == doctest::Approx(21.0).epsilon(0.02));
    CHECK(ra.panels > 0);
    CHECK(ra.tail_bound < 0.02 * ra.closed_form);

    MajorantSpec b;
    b.half_width = 100;
    b.band_limit = 0.1;
    b.truncation = 2000;
    auto rb = majorant_l1(b);
    CHECK(rb.closed_form == 210.0);
    CHECK(rb.rel_err <= 0.02);

    auto rs = majorant_l1_serial(b);
    CHECK(rs.numeric == rb.numeric);
    CHECK(rs.panels == rb.panels);
}

TEST_CASE("transform magnitude collapses beyond the band limit") {
    MajorantSpec spec;
    spec.half_width = 10;
    spec.band_limit = 0.05;
    spec.truncation = 2000;
    double band = spec.band_limit_angular();
    CHECK(band == doctest::Approx(2 * M_PI * 0.05).epsilon(1e-15));
    double tau = decay_tolerance(spec);
    CHECK(tau == doctest::Approx(32.0 * 40.0 / 2000.0).epsilon(1e-12));

    auto rep = transform_decay_check(
        spec, {0.0, 0.5 * band, 2.0 * band, 10.0 * band, -2.0 * band});
    CHECK(rep.tau == tau);
    CHECK(rep.all_ok);
    REQUIRE(rep.points.size() == 5);

    // xi = 0 integrates psi itself.
    auto l1 = majorant_l1(spec);
    CHECK_FALSE(rep.points[0].beyond_band);
    CHECK(rep.points[0].magnitude ==
          doctest::Approx(l1.numeric).epsilon(1e-3));

    CHECK_FALSE(rep.points[1].beyond_band);
    CHECK(rep.points[2].beyond_band);
    CHECK(rep.points[3].beyond_band);
    CHECK(rep.points[2].ok);
    CHECK(rep.points[3].ok);
    CHECK(rep.points[2].magnitude <= tau);
    CHECK(rep.points[3].magnitude <= tau);

    // Real-valued psi: magnitudes at +-xi agree.
    CHECK(rep.points[4].magnitude ==
          doctest::Approx(rep.points[2].magnitude).epsilon(1e-12));
}

TEST_CASE("grid minimum is thread invariant") {
    MajorantSpec spec;
    spec.half_width = 10;
    spec.band_limit = 0.5;
    spec.truncation = 2000;
    set_thread_count(4);
    double g4 = majorant_grid_min(spec, 4001);
    set_thread_count(1);
    double g1 = majorant_grid_min(spec, 4001);
    set_thread_count(0);
    CHECK(g4 == g1);
    CHECK(g4 == majorant_grid_min_serial(spec, 4001));
}

TEST_CASE("majorant specs are validated") {
    MajorantSpec spec;
    spec.half_width = 10;
    spec.band_limit = 0.5;
    spec.truncation = 2000;

    MajorantSpec bad = spec;
    bad.half_width = 0;
    CHECK_THROWS_AS(selberg_majorant(bad, 0.0), std::invalid_argument);
    bad = spec;
    bad.band_limit = 0.0;
    CHECK_THROWS_AS(selberg_majorant(bad, 0.0), std::invalid_argument);
    bad.band_limit = -1.0;
    CHECK_THROWS_AS(majorant_l1(bad), std::invalid_argument);
    bad = spec;
    bad.truncation = 0;
    CHECK_THROWS_AS(majorant_grid_min(bad, 100), std::invalid_argument);

    // The minimum order is 1, not some larger floor.
    MajorantSpec tiny = spec;
    tiny.truncation = 1;
    CHECK_NOTHROW(selberg_majorant(tiny, 0.3));

    CHECK_THROWS_AS(majorant_grid_min(spec, 1), std::invalid_argument);
}
