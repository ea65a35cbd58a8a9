// Acceptance gate: one line per criterion, [PASS] or [FAIL], exit code is
// the number of failures. Each criterion carries its own wall-clock budget.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sievelab/fourier.hpp"
#include "sievelab/majorant.hpp"
#include "sievelab/pipeline.hpp"
#include "sievelab/plan.hpp"
#include "sievelab/primes.hpp"
#include "sievelab/report.hpp"
#include "sievelab/rng.hpp"
#include "sievelab/sieve.hpp"
#include "sievelab/threads.hpp"
#include "sievelab/tuple_counts.hpp"

using namespace sievelab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

int run_criterion(int idx, const std::string& name, double budget_s,
                  const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double dt = seconds_since(t0);
    bool in_budget = budget_s <= 0 || dt < budget_s;
    bool pass = o.pass && in_budget;
    std::string timing = fmt("%.1fs", dt);
    if (budget_s > 0) timing += " of " + fmt("%.0fs", budget_s);
    if (!in_budget) timing += " OVER BUDGET";
    std::printf("[%s] %d. %s (%s; %s)\n", pass ? "PASS" : "FAIL", idx,
                name.c_str(), o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
    return pass ? 0 : 1;
}

// ---- criterion bodies ------------------------------------------------

Outcome squares_survive() {
    auto plan = make_qnr_plan(1000000);
    auto a = sieve(plan);
    uint64_t squares_present = 0;
    for (uint64_t m = 1; m * m <= 1000000; ++m)
        if (a.contains(m * m)) ++squares_present;
    auto rep = run_pipeline(1000000, PlanStrategy::qnr());
    bool ok = squares_present == 1000 && a.cardinality() >= 1000 &&
              rep.survivor_count == a.cardinality();
    return {ok, "squares surviving: " + std::to_string(squares_present) +
                    "/1000, survivors: " + std::to_string(a.cardinality())};
}

Outcome two_sum_bounds() {
    uint64_t records = 0;
    auto check = [&](const SievePlan& plan) -> bool {
        auto a = sieve(plan);
        auto rep = lemma_check(plan, a, 1e-6);
        records += rep.primes.size();
        if (!rep.all_pass) return false;
        double card = static_cast<double>(a.cardinality());
        for (const auto& rec : rep.primes) {
            if (rec.lhs < card - 1e-6) return false;
            if (std::max(rec.s1_mag, rec.s2_mag) < card / 3.0 - 1e-6) return false;
        }
        return true;
    };
    for (uint64_t n : {1000ull, 10000ull, 100000ull, 1000000ull})
        if (!check(make_plan(n, PlanStrategy::middle_half())))
            return {false, "middle-half failed at n=" + std::to_string(n)};
    for (uint64_t seed = 1; seed <= 100; ++seed)
        if (!check(make_plan(10000, PlanStrategy::random_start(seed))))
            return {false, "random plan failed at seed " + std::to_string(seed)};
    return {true, std::to_string(records) + " prime records across 104 plans"};
}

Outcome energy_bound() {
    DetRng rng(17);
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        uint64_t n = 1 + rng.below(2000);
        uint32_t q = 1 + static_cast<uint32_t>(rng.below(40));
        std::vector<std::complex<double>> a(n);
        for (auto& v : a) {
            double re = rng.symmetric(), im = rng.symmetric();
            v = {re, im};
        }
        auto r = large_sieve_check(a, farey_points(q));
        worst = std::max(worst, r.ratio);
        if (r.ratio > 1.0 + 1e-9)
            return {false, "trial " + std::to_string(trial) +
                               " ratio " + num_str(r.ratio)};
    }
    return {true, "1000 trials, worst ratio " + num_str(worst)};
}

Outcome tuple_oracle() {
    TupleCountParams pinned;
    pinned.x = 2;
    pinned.r = 2;
    pinned.e = {3, 1};
    if (count_close_tuples(pinned).count != 6)
        return {false, "pinned count at x=2, r=2, e=3 is off"};
    pinned.r = 1;
    pinned.e = {2, 1};
    if (count_close_tuples(pinned).count != 4)
        return {false, "pinned count at x=2, r=1, e=2 is off"};

    uint64_t cases = 0;
    for (uint64_t x = 2; x <= 24; ++x)
        for (uint32_t r : {1u, 2u})
            for (uint64_t e : {uint64_t(r), uint64_t(r) + 1}) {
                TupleCountParams p;
                p.x = x;
                p.r = r;
                p.e = {e, 1};
                uint64_t fast = count_close_tuples(p).count;
                uint64_t slow = count_close_tuples_serial(p).count;
                uint64_t oracle = brute_force_close_tuples(x, r, p.e);
                if (fast != oracle || slow != oracle)
                    return {false, "mismatch at x=" + std::to_string(x) +
                                       " r=" + std::to_string(r) +
                                       " e=" + std::to_string(e)};
                ++cases;
            }
    return {true, std::to_string(cases) + " parameter sets agree"};
}

Outcome growth_exponent() {
    std::vector<std::pair<double, double>> pts;
    std::string counts;
    for (uint64_t x : {16ull, 32ull, 64ull, 128ull, 256ull}) {
        TupleCountParams p;
        p.x = x;
        p.r = 2;
        p.e = {3, 1};
        auto rep = count_close_tuples(p);
        pts.emplace_back(static_cast<double>(x), static_cast<double>(rep.count));
        counts += (counts.empty() ? "" : ",") + std::to_string(rep.count);
    }
    double slope = exponent_fit(pts);
    bool ok = slope >= 1.9 && slope <= 2.4;
    return {ok, "slope " + fmt("%.3f", slope) + " from counts " + counts};
}

Outcome majorant_quality() {
    MajorantSpec spec;
    spec.half_width = 100;
    spec.band_limit = 1.0 / (2000.0 * M_PI);
    spec.truncation = 10000;

    double gmin = majorant_grid_min(spec, 10001);
    if (gmin < 1.0 - 1e-6)
        return {false, "grid min " + num_str(gmin) + " below 1 - 1e-6"};

    auto l1 = majorant_l1(spec);
    if (l1.rel_err > 0.02)
        return {false, "mass off by " + fmt("%.4f", l1.rel_err)};

    double band = spec.band_limit_angular();
    auto decay = transform_decay_check(spec, {2.0 * band, 10.0 * band});
    double tau = decay_tolerance(spec);
    for (const auto& pt : decay.points)
        if (!pt.beyond_band || pt.magnitude > tau)
            return {false, "leak " + num_str(pt.magnitude) + " at xi=" +
                               num_str(pt.xi) + " vs tau " + num_str(tau)};

    return {true, "grid min " + fmt("%.9f", gmin) + ", mass err " +
                      fmt("%.2e", l1.rel_err) + ", worst leak " +
                      fmt("%.2e", std::max(decay.points[0].magnitude,
                                           decay.points[1].magnitude)) +
                      " vs tau " + fmt("%.2f", tau)};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) return {};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome scan_determinism() {
    for (uint64_t x : {1ull, 8ull, 512ull}) {
        auto s = reciprocal_expsum(x, 0);
        if (s.real() != static_cast<double>(x) || s.imag() != 0.0)
            return {false, "peak value at xi=0 not exact for x=" +
                               std::to_string(x)};
    }
    DetRng rng(41);
    for (int i = 0; i < 100; ++i) {
        mpz_class xi = rng.next();
        if (std::abs(reciprocal_expsum(512, xi)) > 512.0 + 1e-9)
            return {false, "magnitude above the term count"};
    }

    set_thread_count(1);
    auto one = to_json(sup_scan(512, 2, 1000, 1)).dump() + "\n";
    set_thread_count(2);
    auto two = to_json(sup_scan(512, 2, 1000, 1)).dump() + "\n";
    set_thread_count(0);
    auto ser = to_json(sup_scan_serial(512, 2, 1000, 1)).dump() + "\n";
    if (one != two || one != ser)
        return {false, "scan output varies with thread count"};

    const std::string path = std::string(GOLDEN_DIR) + "/supscan_512_2_1000_1.json";
    if (std::getenv("GOLDEN_REGEN")) {
        std::ofstream out(path, std::ios::binary);
        out << one;
        return {true, "golden regenerated"};
    }
    auto want = read_file(path);
    if (want.empty()) return {false, "golden file missing: " + path};
    if (one != want) return {false, "scan output drifted from the golden copy"};
    return {true, "peaks exact, 100 samples bounded, golden byte-identical"};
}

Outcome sweep_budget() {
    auto rows = sweep({1000, 10000, 100000, 1000000}, PlanStrategy::middle_half());
    std::string ratios;
    for (const auto& row : rows) {
        if (!row.report) return {false, "n=" + std::to_string(row.n) +
                                            " failed: " + row.error};
        double card = static_cast<double>(row.report->survivor_count);
        if (card > std::sqrt(static_cast<double>(row.n)) + 1e-9)
            return {false, "survivors exceed sqrt(n) at n=" +
                               std::to_string(row.n)};
        ratios += (ratios.empty() ? "" : ", ") + fmt("%.3f", row.report->ratio_cbrt);
    }
    return {true, "all within sqrt(n); |A|/n^(1/3): " + ratios};
}

struct RunResult {
    bool ran = false;
    int exit_code = -1;
    std::string out;
};

RunResult run_cmd(const std::string& cmd) {
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[1 << 14];
    std::size_t k;
    while ((k = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
    int status = pclose(p);
    r.ran = true;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -2;
    return r;
}

Outcome cli_thread_invariance() {
    const char* cli = std::getenv("SIEVELAB_CLI");
    if (!cli || !*cli)
        return {false, "SIEVELAB_CLI is not set; run through ctest"};

    const std::vector<std::string> invocations = {
        "primes --limit 50",
        "sieve --n 2500 --strategy qnr --members --show-plan"
        " --residues --quad-probe 1",
        "lemma-check --n 2000 --strategy random --seed 3",
        "pipeline --n 1000",
        "sweep --ns 100,1000",
        "tuples --x 24 --r 2",
        "tuples-oracle --x 6 --r 2 --e 3",
        "tuples-scan --xs 8,16,32 --r 2",
        "expsum --x 500 --xi 123456789012345678901",
        "expsum-scan --x 128 --r 2 --samples 40 --seed 2",
        "large-sieve-check --n 200 --q 12 --coeffs random --trials 5 --seed 4",
        "majorant-check --n 10 --delta 0.05 --m 2000 --grid-points 1001"
        " --xi-factors 2,10",
    };

    unsigned checked = 0;
    for (const auto& inv : invocations) {
        for (const char* out : {"json", "csv"}) {
            std::string base = std::string(cli) + " " + inv + " --out " + out;
            auto a = run_cmd(base + " --threads 1 2>/dev/null");
            auto b = run_cmd(base + " --threads 3 2>/dev/null");
            if (!a.ran || !b.ran)
                return {false, "could not spawn: " + base};
            if (a.exit_code != 0 || b.exit_code != 0)
                return {false, "nonzero exit (" + std::to_string(a.exit_code) +
                                   "/" + std::to_string(b.exit_code) + "): " +
                                   inv + " --out " + out};
            if (a.out != b.out)
                return {false, "stdout differs across thread counts: " + inv +
                                   " --out " + out};
            if (a.out.empty())
                return {false, "empty stdout: " + inv};
            ++checked;
        }
    }
    return {true, std::to_string(checked) + " invocation pairs byte-identical"};
}

} // namespace

int main() {
    int failures = 0;
    failures += run_criterion(1, "quadratic-residue plan keeps every square", 60,
                              squares_survive);
    failures += run_criterion(2, "two-sum lower bounds hold on interval plans",
                              300, two_sum_bounds);
    failures += run_criterion(3, "separated-point energy stays within the bound",
                              60, energy_bound);
    failures += run_criterion(4, "tuple counter matches the exhaustive oracle",
                              300, tuple_oracle);
    failures += run_criterion(5, "close-tuple growth exponent lands near 2",
                              900, growth_exponent);
    failures += run_criterion(6, "interval majorant covers, weighs in, decays",
                              120, majorant_quality);
    failures += run_criterion(7, "reciprocal-sum scan is exact and thread-proof",
                              120, scan_determinism);
    failures += run_criterion(8, "survivor sweep respects the square-root budget",
                              300, sweep_budget);
    failures += run_criterion(9, "CLI output is byte-identical across threads",
                              600, cli_thread_invariance);

    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures;
}
