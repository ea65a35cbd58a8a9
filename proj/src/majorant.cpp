#include "sievelab/majorant.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sievelab/pairwise.hpp"

namespace sievelab {

namespace {

constexpr double kPi = std::numbers::pi;

// 16-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kGlNode[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542,
};
constexpr double kGlWeight[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806,
};

void check_spec(const MajorantSpec& spec) {
    if (spec.half_width < 1)
        throw std::invalid_argument("majorant: half_width must be >= 1");
    if (!(spec.band_limit > 0))
        throw std::invalid_argument("majorant: band limit must be positive");
    if (spec.truncation < 1)
        throw std::invalid_argument("majorant: truncation order must be >= 1");
}

} // namespace

double MajorantSpec::band_limit_angular() const { return 2.0 * kPi * band_limit; }

double beurling_b(double x, uint32_t m) {
    if (m < 1) throw std::invalid_argument("beurling_b: m must be >= 1");
    // sin^2(pi x) computed from the fractional part; shared by every term.
    double frac = x - std::nearbyint(x);
    double s = std::sin(kPi * frac);
    double s2 = s * s;

    // sinc^2(u) for u congruent to x mod 1. u == 0 happens for at most one
    // term and is the exact integer hit.
    auto sinc2 = [s2](double u) {
        if (u == 0.0) return 1.0;
        double d = kPi * u;
        return s2 / (d * d);
    };

    double acc = sinc2(x); // n = 0
    for (uint32_t n = 1; n <= m; ++n) {
        double dn = static_cast<double>(n);
        acc += sinc2(x - dn) - sinc2(x + dn);
    }
    // 2*sin^2(pi x)/(pi^2 x); vanishes in the limit x -> 0.
    if (x != 0.0) acc += 2.0 * s2 / (kPi * kPi * x);
    return acc;
}

double beurling_tail_bound(double x, uint32_t m) {
    double md = static_cast<double>(m);
    return 0.5 * (std::abs(x) + 1.0) / (md * md);
}

double selberg_majorant(const MajorantSpec& spec, double t) {
    check_spec(spec);
    double n = static_cast<double>(spec.half_width);
    double d = spec.band_limit;
    return 0.5 * (beurling_b(d * (t + n), spec.truncation) +
                  beurling_b(d * (n - t), spec.truncation));
}

namespace {

// Composite GL16 integral of psi(x)*e^(-i xi x) over [lo, hi]. Panel width
// resolves both the majorant's own oscillation (period 1/delta) and the
// transform kernel.
std::complex<double> quad_transform(const MajorantSpec& spec, double lo,
                                    double hi, double xi, uint64_t& panels_out,
                                    bool parallel) {
    double width = 0.25 / spec.band_limit;
    if (xi != 0.0)
        width = std::min(width, 2.5 * 2.0 * kPi / std::abs(xi));
    auto panels = static_cast<uint64_t>(std::ceil((hi - lo) / width));
    if (panels < 1) panels = 1;
    panels_out = panels;
    double h = (hi - lo) / static_cast<double>(panels);

    std::vector<std::complex<double>> part(panels);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int64_t p = 0; p < static_cast<int64_t>(panels); ++p) {
        double a = lo + h * static_cast<double>(p);
        double mid = a + h / 2, half = h / 2;
        std::complex<double> acc{};
        for (int j = 0; j < 8; ++j) {
            for (int sgn = -1; sgn <= 1; sgn += 2) {
                double t = mid + half * kGlNode[j] * sgn;
                double v = selberg_majorant(spec, t);
                std::complex<double> ker{1.0, 0.0};
                if (xi != 0.0) ker = std::complex<double>{std::cos(xi * t), -std::sin(xi * t)};
                acc += kGlWeight[j] * v * ker;
            }
        }
        part[p] = acc * half;
    }
    return pairwise_sum(part);
}

L1Report l1_impl(const MajorantSpec& spec, bool parallel) {
    check_spec(spec);
    double n = static_cast<double>(spec.half_width);
    // Beyond the cutoff psi decays like 1/(2 pi^2 delta^2 t^2); T = 32/delta
    // leaves a tail below 0.2% of the closed form.
    double t_cut = 32.0 / spec.band_limit;
    L1Report rep;
    rep.tail_cutoff = t_cut;
    rep.tail_bound = 1.0 / (2.0 * kPi * kPi * spec.band_limit * spec.band_limit * t_cut);
    rep.closed_form = spec.closed_form_l1();
    rep.numeric =
        quad_transform(spec, -n - t_cut, n + t_cut, 0.0, rep.panels, parallel).real();
    rep.rel_err = std::abs(rep.numeric - rep.closed_form) / rep.closed_form;
    return rep;
}

} // namespace

L1Report majorant_l1(const MajorantSpec& spec) { return l1_impl(spec, true); }

L1Report majorant_l1_serial(const MajorantSpec& spec) {
    return l1_impl(spec, false);
}

double decay_tolerance(const MajorantSpec& spec) {
    return 32.0 * spec.closed_form_l1() / static_cast<double>(spec.truncation);
}

DecayReport transform_decay_check(const MajorantSpec& spec,
                                  const std::vector<double>& xis_angular) {
    check_spec(spec);
    DecayReport rep;
    rep.band_limit_angular = spec.band_limit_angular();
    rep.tau = decay_tolerance(spec);
    double n = static_cast<double>(spec.half_width);
    double t_cut = 64.0 / spec.band_limit;
    for (double xi : xis_angular) {
        uint64_t panels = 0;
        std::complex<double> val =
            quad_transform(spec, -n - t_cut, n + t_cut, xi, panels, true);
        DecayPoint pt;
        pt.xi = xi;
        pt.magnitude = std::abs(val);
        pt.beyond_band = std::abs(xi) > rep.band_limit_angular;
        pt.ok = !pt.beyond_band || pt.magnitude <= rep.tau;
        rep.all_ok = rep.all_ok && pt.ok;
        rep.points.push_back(pt);
    }
    return rep;
}

namespace {

double grid_min_impl(const MajorantSpec& spec, uint64_t grid_points,
                     bool parallel) {
    check_spec(spec);
    if (grid_points < 2)
        throw std::invalid_argument("majorant_grid_min: need >= 2 grid points");
    double n = static_cast<double>(spec.half_width);
    double lo = -n, hi = n;
    double worst = std::numeric_limits<double>::infinity();
#pragma omp parallel for reduction(min : worst) schedule(static) if (parallel)
    for (int64_t i = 0; i < static_cast<int64_t>(grid_points); ++i) {
        double t = lo + (hi - lo) * static_cast<double>(i) /
                            static_cast<double>(grid_points - 1);
        worst = std::min(worst, selberg_majorant(spec, t));
    }
    return worst;
}

} // namespace

double majorant_grid_min(const MajorantSpec& spec, uint64_t grid_points) {
    return grid_min_impl(spec, grid_points, true);
}

double majorant_grid_min_serial(const MajorantSpec& spec, uint64_t grid_points) {
    return grid_min_impl(spec, grid_points, false);
}

} // namespace sievelab
