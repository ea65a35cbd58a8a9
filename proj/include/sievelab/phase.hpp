#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace sievelab {

// e(t) = exp(2*pi*i*t). Every exponential in the project goes through this
// single definition.
inline std::complex<double> unit_e(double t) {
    double ang = 2.0 * std::numbers::pi * t;
    return {std::cos(ang), std::sin(ang)};
}

} // namespace sievelab
