#pragma once

#include <cstdint>
#include <vector>

namespace sievelab {

// Band-limited majorant of the indicator of [-N, N]. band_limit is the
// transform support radius in cycles: the angular support is
// 2*pi*band_limit. truncation is the series order M of the underlying
// extremal function.
struct MajorantSpec {
    uint64_t half_width = 1;    // N
    double band_limit = 1.0;    // delta_c, cycles
    uint32_t truncation = 10000; // M

    double closed_form_l1() const {
        return 2.0 * static_cast<double>(half_width) + 1.0 / band_limit;
    }
    double band_limit_angular() const;
};

// Truncated extremal majorant of sgn(x):
//   B_M(x) = sum_{n=0..M} sinc^2(x-n) - sum_{n=1..M} sinc^2(x+n)
//            + 2*sin^2(pi x)/(pi^2 x),
// with sinc(u) = sin(pi u)/(pi u). Every term shares sin^2(pi x), so the
// evaluation is stable at and near all integers; B_M(n) = sgn(n) exactly for
// nonzero integers |n| <= M and B_M(0) = 1.
double beurling_b(double x, uint32_t m);

// Pointwise truncation bound |B(x) - B_M(x)| <= 0.5*(|x|+1)/M^2, valid for
// |x| <= M/2.
double beurling_tail_bound(double x, uint32_t m);

// psi(t) = (B(delta(t+N)) + B(delta(N-t))) / 2; majorizes the indicator of
// [-N, N] and has transform supported in |xi| <= 2*pi*delta (angular).
double selberg_majorant(const MajorantSpec& spec, double t);

struct L1Report {
    double numeric = 0;
    double closed_form = 0; // 2N + 1/delta
    double rel_err = 0;
    double tail_cutoff = 0; // T: quadrature ran over [-N-T, N+T]
    double tail_bound = 0;  // mass bound beyond the cutoff
    uint64_t panels = 0;
};

// Gauss-Legendre quadrature of psi over [-N-T, N+T] with T picked so the
// discarded tail is far below the 2% comparison budget.
L1Report majorant_l1(const MajorantSpec& spec);
L1Report majorant_l1_serial(const MajorantSpec& spec);

struct DecayPoint {
    double xi = 0;        // angular frequency
    double magnitude = 0; // |integral of psi(x) e(-i xi x) dx|
    bool beyond_band = false;
    bool ok = true; // magnitude <= tau when beyond_band
};

struct DecayReport {
    double band_limit_angular = 0;
    double tau = 0; // documented truncation tolerance
    std::vector<DecayPoint> points;
    bool all_ok = true;
};

// Numeric transform of psi at the given angular frequencies. Beyond the band
// limit the exact transform vanishes; the truncated series leaks at most
// tau(M) = 32*(2N + 1/delta)/M, which is the documented tolerance.
double decay_tolerance(const MajorantSpec& spec);
DecayReport transform_decay_check(const MajorantSpec& spec,
                                  const std::vector<double>& xis_angular);

// Minimum of psi over a uniform grid on [-N, N] (endpoints included).
double majorant_grid_min(const MajorantSpec& spec, uint64_t grid_points);
double majorant_grid_min_serial(const MajorantSpec& spec, uint64_t grid_points);

} // namespace sievelab
