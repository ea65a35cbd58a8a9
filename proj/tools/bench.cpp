// Benchmark of the parallel kernels against their single-thread reference
// implementations. Every pair must produce bit-identical results; timing is
// reported for both. Exits 1 on any mismatch.

#include <chrono>
#include <complex>
#include <cstdio>
#include <cstring>
#include <string>

#include "sievelab/fourier.hpp"
#include "sievelab/majorant.hpp"
#include "sievelab/plan.hpp"
#include "sievelab/sieve.hpp"
#include "sievelab/threads.hpp"
#include "sievelab/tuple_counts.hpp"

using namespace sievelab;

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch()).count();
}

bool g_all_ok = true;

void row(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-28s %10.3fs %10.3fs %8.2fx  %s\n", name, serial_s,
                parallel_s, parallel_s > 0 ? serial_s / parallel_s : 0.0,
                identical ? "identical" : "MISMATCH");
    g_all_ok = g_all_ok && identical;
}

} // namespace

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) quick = true;

    std::printf("threads available: %u\n", thread_count());
    std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel",
                "speedup");

    {
        uint64_t n = quick ? 200'000 : 4'000'000;
        SievePlan plan = make_plan(n, PlanStrategy::middle_half());
        double t0 = now_s();
        SurvivorSet s = sieve_serial(plan);
        double t1 = now_s();
        SurvivorSet p = sieve(plan);
        double t2 = now_s();
        bool same = s.cardinality() == p.cardinality() && s.words() == p.words();
        row("sieve", t1 - t0, t2 - t1, same);

        uint32_t prime = 9973;
        double t3 = now_s();
        auto es = residue_exp_sum_serial(p, prime, 1);
        double t4 = now_s();
        auto ep = residue_exp_sum(p, prime, 1);
        double t5 = now_s();
        row("residue_exp_sum", t4 - t3, t5 - t4, es == ep);
    }

    {
        TupleCountParams params;
        params.x = quick ? 256 : 1024;
        params.r = 2;
        double t0 = now_s();
        auto s = count_close_tuples_serial(params);
        double t1 = now_s();
        auto p = count_close_tuples(params);
        double t2 = now_s();
        bool same = s.count == p.count && s.diagonal_count == p.diagonal_count &&
                    s.distinct_sums == p.distinct_sums &&
                    s.equal_pair_count == p.equal_pair_count;
        row("count_close_tuples", t1 - t0, t2 - t1, same);
    }

    {
        uint64_t x = quick ? 50'000 : 2'000'000;
        mpz_class xi("123456789012345678901234567890123456789");
        double t0 = now_s();
        auto s = reciprocal_expsum_serial(x, xi);
        double t1 = now_s();
        auto p = reciprocal_expsum(x, xi);
        double t2 = now_s();
        row("reciprocal_expsum", t1 - t0, t2 - t1, s == p);
    }

    {
        uint64_t x = quick ? 64 : 256;
        uint64_t samples = quick ? 50 : 400;
        double t0 = now_s();
        auto s = sup_scan_serial(x, 2, samples, 3);
        double t1 = now_s();
        auto p = sup_scan(x, 2, samples, 3);
        double t2 = now_s();
        bool same = s.max_normalized == p.max_normalized &&
                    s.max_magnitude == p.max_magnitude &&
                    s.argmax_xi == p.argmax_xi;
        row("sup_scan", t1 - t0, t2 - t1, same);
    }

    {
        MajorantSpec spec;
        spec.half_width = 50;
        spec.band_limit = quick ? 1e-2 : 1e-3;
        spec.truncation = quick ? 500 : 2000;
        uint64_t grid = quick ? 20'001 : 200'001;
        double t0 = now_s();
        double s = majorant_grid_min_serial(spec, grid);
        double t1 = now_s();
        double p = majorant_grid_min(spec, grid);
        double t2 = now_s();
        row("majorant_grid_min", t1 - t0, t2 - t1, s == p);

        double t3 = now_s();
        auto ls = majorant_l1_serial(spec);
        double t4 = now_s();
        auto lp = majorant_l1(spec);
        double t5 = now_s();
        row("majorant_l1", t4 - t3, t5 - t4, ls.numeric == lp.numeric);
    }

    std::printf("%s\n", g_all_ok ? "all kernels identical"
                                 : "kernel mismatch detected");
    return g_all_ok ? 0 : 1;
}
